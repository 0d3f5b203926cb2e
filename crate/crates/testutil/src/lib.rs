//! Deterministic generators and brute-force oracles for the test suites.
//!
//! Everything here is seeded and allocation-order independent so that test
//! runs are reproducible byte for byte. The oracles deliberately take the
//! dumbest correct route (exhaustive enumeration) and stay independent of
//! the search code they are used to check.

use monomap_core::grid::{
    shortest_path, GridPos, Instance, Robot, RobotId, RobotRole, Workspace,
};
use monomap_core::sat::{Clause, CnfFormula, Literal};

use std::collections::BTreeSet;

/// Small xorshift generator; stable across platforms and releases, unlike
/// off-the-shelf RNGs whose streams may change between versions.
#[derive(Debug, Clone)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed.max(1),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// Random 3-CNF formula with `1..=max_vars` variables and
/// `1..=max_clauses` clauses. Duplicate and complementary literals within a
/// clause are allowed, as in the data model.
pub fn random_formula(rng: &mut XorShift64, max_vars: u32, max_clauses: usize) -> CnfFormula {
    let num_vars = 1 + rng.below(max_vars as u64) as u32;
    let num_clauses = 1 + rng.below(max_clauses as u64) as usize;
    let clauses: Vec<Clause> = (0..num_clauses)
        .map(|_| {
            [0; 3].map(|_| Literal {
                var: 1 + rng.below(num_vars as u64) as u32,
                positive: rng.flip(),
            })
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("generated literals are in range")
}

/// Random instance on a grid of up to `max_side` x `max_side` cells with up
/// to `max_robots` robots: random obstacles, then distinct free starts and
/// distinct free targets.
pub fn random_instance(rng: &mut XorShift64, max_side: u32, max_robots: usize) -> Instance {
    loop {
        let width = 2 + rng.below(max_side as u64 - 1) as u32;
        let height = 2 + rng.below(max_side as u64 - 1) as u32;
        let mut obstacles = Vec::new();
        for row in 0..height {
            for col in 0..width {
                if rng.below(100) < 15 {
                    obstacles.push(GridPos::new(col, row));
                }
            }
        }
        let workspace = match Workspace::new(width, height, obstacles) {
            Ok(ws) => ws,
            Err(_) => continue,
        };
        let free: Vec<GridPos> = (0..height)
            .flat_map(|row| (0..width).map(move |col| GridPos::new(col, row)))
            .filter(|&c| workspace.is_free(c))
            .collect();
        let wanted = 1 + rng.below(max_robots as u64) as usize;
        if free.len() < wanted.max(2) {
            continue;
        }
        let mut pick_distinct = |count: usize, rng: &mut XorShift64| -> Vec<GridPos> {
            let mut chosen: Vec<GridPos> = Vec::new();
            while chosen.len() < count {
                let cell = free[rng.below(free.len() as u64) as usize];
                if !chosen.contains(&cell) {
                    chosen.push(cell);
                }
            }
            chosen
        };
        let starts = pick_distinct(wanted, rng);
        let targets = pick_distinct(wanted, rng);
        let robots = (0..wanted)
            .map(|i| Robot {
                id: RobotId(i as u32),
                label: format!("r{i}"),
                role: RobotRole::Literal,
                start: starts[i],
                target: targets[i],
            })
            .collect();
        match Instance::new(workspace, robots) {
            Ok(instance) => return instance,
            Err(_) => continue,
        }
    }
}

/// Brute-force monotone feasibility: tries every robot permutation, moving
/// each robot in order if any path exists through the stationary robots.
/// Exponential; callers keep the robot count at 7 or below.
pub fn permutation_feasible(instance: &Instance) -> bool {
    let n = instance.robot_count();
    if n == 0 {
        return true;
    }
    let mut order: Vec<usize> = (0..n).collect();
    permute(instance, &mut order, 0)
}

fn permute(instance: &Instance, order: &mut Vec<usize>, depth: usize) -> bool {
    let n = order.len();
    if depth == n {
        return simulate(instance, order);
    }
    for i in depth..n {
        order.swap(depth, i);
        if permute(instance, order, depth + 1) {
            order.swap(depth, i);
            return true;
        }
        order.swap(depth, i);
    }
    false
}

fn simulate(instance: &Instance, order: &[usize]) -> bool {
    let robots = instance.robots();
    let mut moved = vec![false; robots.len()];
    for &mover in order {
        let mut occupied: BTreeSet<GridPos> = BTreeSet::new();
        for (other, robot) in robots.iter().enumerate() {
            if other == mover {
                continue;
            }
            occupied.insert(if moved[other] {
                robot.target
            } else {
                robot.start
            });
        }
        let robot = &robots[mover];
        if occupied.contains(&robot.start) || occupied.contains(&robot.target) {
            return false;
        }
        match shortest_path(instance.workspace(), robot.start, robot.target, &occupied) {
            Ok(Some(_)) => moved[mover] = true,
            _ => return false,
        }
    }
    true
}

/// All simple paths between two cells, for exhaustive shortest-path checks
/// on tiny grids.
pub fn enumerate_simple_paths(
    workspace: &Workspace,
    from: GridPos,
    to: GridPos,
    occupied: &BTreeSet<GridPos>,
) -> Vec<Vec<GridPos>> {
    let mut paths = Vec::new();
    let mut current = vec![from];
    let mut seen = BTreeSet::new();
    seen.insert(from);
    walk(workspace, to, occupied, &mut current, &mut seen, &mut paths);
    paths
}

fn walk(
    workspace: &Workspace,
    to: GridPos,
    occupied: &BTreeSet<GridPos>,
    current: &mut Vec<GridPos>,
    seen: &mut BTreeSet<GridPos>,
    paths: &mut Vec<Vec<GridPos>>,
) {
    let at = *current.last().expect("path starts nonempty");
    if at == to {
        paths.push(current.clone());
        return;
    }
    let candidates = [
        (at.col.checked_add(1).map(|c| GridPos::new(c, at.row))),
        (at.row.checked_add(1).map(|r| GridPos::new(at.col, r))),
        (at.row.checked_sub(1).map(|r| GridPos::new(at.col, r))),
        (at.col.checked_sub(1).map(|c| GridPos::new(c, at.row))),
    ];
    for next in candidates.into_iter().flatten() {
        if !workspace.is_free(next) || occupied.contains(&next) || seen.contains(&next) {
            continue;
        }
        current.push(next);
        seen.insert(next);
        walk(workspace, to, occupied, current, seen, paths);
        seen.remove(&next);
        current.pop();
    }
}
