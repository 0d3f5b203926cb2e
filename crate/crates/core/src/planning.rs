//! Plan synthesis from a satisfying assignment, assignment extraction from a
//! plan, and a complete decision procedure for monotone feasibility.
//!
//! Synthesis builds the verifier's weakly x-monotone path P through the
//! false-literal row of every assignment gadget and one satisfied target in
//! every clause gadget, then routes false-literal robots before the
//! verifier and true-literal robots after it. Extraction reads the truth
//! assignment back off the set of robots that move after the verifier.
//!
//! The solver searches the lattice of moved-robot subsets: once a set of
//! robots has reached its targets, the world state is fully determined by
//! that set, so depth-first search with a memo of dead subsets is complete.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::grid::{shortest_path, GridPos, Instance, MonotonePlan, Path, RobotId};
use crate::reduction::{
    ReductionLayout, RobotKind, BOTTOM_ROW, TOP_ROW, VERIFIER_ROW,
};
use crate::sat::{Assignment, PartialAssignment};

/// Column index never decreases along the path.
pub fn is_weakly_x_monotone(path: &Path) -> bool {
    path.cells().windows(2).all(|w| w[0].col <= w[1].col)
}

/// The scaffolding of a synthesized plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisTrace {
    /// The verifier's path P.
    pub verifier_path: Path,
    /// Robots whose literals are true under the assignment, ascending by id.
    pub true_set: Vec<RobotId>,
    /// Robots whose literals are false under the assignment, ascending by id.
    pub false_set: Vec<RobotId>,
    /// Per clause, the satisfied target cell P passes through.
    pub chosen_clause_targets: Vec<GridPos>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("assignment does not satisfy clause {clause}")]
    UnsatisfiedClause { clause: usize },
    #[error(transparent)]
    PartialAssignment(#[from] PartialAssignment),
    #[error("layout does not match the instance: {0}")]
    LayoutMismatch(&'static str),
}

/// Emits the cells of a left-to-right path over column segments
/// `(first_col, last_col, row)`, switching rows in the single column between
/// consecutive segments (the approach column, or the segment's own first
/// column when the segments are adjacent).
fn build_segment_path(segments: &[(u32, u32, u32)]) -> Path {
    let mut cells: Vec<GridPos> = Vec::new();
    let (first, last, row) = segments[0];
    for col in first..=last {
        cells.push(GridPos::new(col, row));
    }
    for pair in segments.windows(2) {
        let (_, prev_last, prev_row) = pair[0];
        let (next_first, next_last, next_row) = pair[1];
        let gap = next_first - prev_last;
        debug_assert!(gap == 1 || gap == 2, "segments separated by at most one column");
        let switch_col = if gap == 2 { prev_last + 1 } else { next_first };
        if gap == 2 {
            cells.push(GridPos::new(switch_col, prev_row));
        } else {
            cells.push(GridPos::new(next_first, prev_row));
        }
        push_vertical(&mut cells, switch_col, prev_row, next_row);
        let start = if gap == 2 { next_first } else { next_first + 1 };
        for col in start..=next_last {
            cells.push(GridPos::new(col, next_row));
        }
    }
    Path::new(cells).expect("segment paths take unit steps")
}

/// Appends the cells strictly between `from_row` and `to_row` (inclusive of
/// the destination) in one column.
fn push_vertical(cells: &mut Vec<GridPos>, col: u32, from_row: u32, to_row: u32) {
    let mut row = from_row;
    while row != to_row {
        row = if to_row > row { row + 1 } else { row - 1 };
        cells.push(GridPos::new(col, row));
    }
}

/// Builds the monotone plan realizing a satisfying assignment on a
/// reduction instance: false-literal robots in right-to-left source order,
/// then the verifier along P, then true-literal robots in right-to-left
/// target order.
pub fn synthesize_plan(
    instance: &Instance,
    layout: &ReductionLayout,
    assignment: &Assignment,
) -> Result<(MonotonePlan, SynthesisTrace), SynthesisError> {
    let formula = layout.formula();
    if instance.robot_count() != formula.literal_count() + 1 {
        return Err(SynthesisError::LayoutMismatch(
            "robot count does not match the layout's formula",
        ));
    }
    if assignment.num_vars() != formula.num_vars() {
        return Err(SynthesisError::PartialAssignment(PartialAssignment {
            assigned: assignment.num_vars(),
            required: formula.num_vars(),
        }));
    }

    // Pick the topmost satisfied target in every clause gadget.
    let mut chosen_rows: Vec<u32> = Vec::with_capacity(formula.clause_count());
    for (clause_idx, clause) in formula.clauses().iter().enumerate() {
        let Some(position) = clause
            .iter()
            .position(|&lit| assignment.satisfies_literal(lit) == Some(true))
        else {
            return Err(SynthesisError::UnsatisfiedClause { clause: clause_idx });
        };
        chosen_rows.push(position as u32);
    }

    // P traverses the false-literal row of every assignment gadget: the
    // bottom row when the variable is true, the top row when it is false.
    let width = instance.workspace().width();
    let mut segments: Vec<(u32, u32, u32)> = Vec::new();
    segments.push((0, 0, VERIFIER_ROW));
    for gadget in layout.variables() {
        let row = if assignment.value(gadget.var) == Some(true) {
            BOTTOM_ROW
        } else {
            TOP_ROW
        };
        segments.push((gadget.first_col, gadget.last_col, row));
    }
    for (clause_idx, gadget) in layout.clause_gadgets().iter().enumerate() {
        segments.push((gadget.column, gadget.column, chosen_rows[clause_idx]));
    }
    segments.push((width - 1, width - 1, VERIFIER_ROW));
    let verifier_path = build_segment_path(&segments);
    let path_cells = verifier_path.cells();

    // Classify literal robots by the truth value of their literal.
    let mut true_set: Vec<RobotId> = Vec::new();
    let mut false_set: Vec<RobotId> = Vec::new();
    for robot in instance.robots() {
        match layout
            .literal_of_robot(robot.id)
            .map_err(|_| SynthesisError::LayoutMismatch("robot unknown to the layout"))?
        {
            RobotKind::Verifier => {}
            RobotKind::Literal(lit) => {
                if assignment.satisfies_literal(lit) == Some(true) {
                    true_set.push(robot.id);
                } else {
                    false_set.push(robot.id);
                }
            }
        }
    }

    let first_index_in_col = |col: u32| -> usize {
        path_cells
            .iter()
            .position(|c| c.col == col)
            .expect("P crosses every column")
    };
    let last_index_in_col = |col: u32| -> usize {
        path_cells.len()
            - 1
            - path_cells
                .iter()
                .rev()
                .position(|c| c.col == col)
                .expect("P crosses every column")
    };

    let mut moves: Vec<(RobotId, Path)> = Vec::new();

    // False-literal robots, right-to-left by source: each follows P from its
    // own source to the approach column of its target's clause gadget, steps
    // to the target's row, then one step right into the target.
    let mut false_order = false_set.clone();
    false_order.sort_by_key(|id| {
        let r = &instance.robots()[id.index()];
        (core::cmp::Reverse(r.start.col), r.start.row, id.0)
    });
    for id in &false_order {
        let robot = &instance.robots()[id.index()];
        let approach_col = robot.target.col - 1;
        let source_idx = path_cells
            .iter()
            .position(|&c| c == robot.start)
            .expect("false-literal sources lie on P");
        let approach_idx = first_index_in_col(approach_col);
        let mut cells: Vec<GridPos> = path_cells[source_idx..=approach_idx].to_vec();
        push_vertical(
            &mut cells,
            approach_col,
            path_cells[approach_idx].row,
            robot.target.row,
        );
        cells.push(robot.target);
        moves.push((*id, Path::new(cells).expect("derived route takes unit steps")));
    }

    // The verifier crosses along P, now clear of false-literal robots.
    moves.push((layout.verifier(), verifier_path.clone()));

    // True-literal robots, right-to-left by target: exit the gadget
    // rightward in the source row, join P in the nearest empty column, and
    // continue like the false-literal robots.
    let mut true_order = true_set.clone();
    true_order.sort_by_key(|id| {
        let r = &instance.robots()[id.index()];
        (core::cmp::Reverse(r.target.col), r.target.row, id.0)
    });
    for id in &true_order {
        let robot = &instance.robots()[id.index()];
        let lit = match layout.literal_of_robot(*id) {
            Ok(RobotKind::Literal(lit)) => lit,
            _ => unreachable!("true_set holds literal robots"),
        };
        let gadget = layout
            .variable_gadget(lit.var)
            .map_err(|_| SynthesisError::LayoutMismatch("literal variable has no gadget"))?;
        let join_col = *layout
            .empty_cols()
            .iter()
            .find(|&&col| col > gadget.last_col)
            .expect("an empty column follows every assignment gadget");
        let approach_col = robot.target.col - 1;

        let mut cells: Vec<GridPos> = (robot.start.col..=join_col)
            .map(|col| GridPos::new(col, robot.start.row))
            .collect();
        if join_col == approach_col {
            push_vertical(&mut cells, join_col, robot.start.row, robot.target.row);
        } else {
            let exit_idx = last_index_in_col(join_col);
            push_vertical(&mut cells, join_col, robot.start.row, path_cells[exit_idx].row);
            let approach_idx = first_index_in_col(approach_col);
            cells.extend_from_slice(&path_cells[exit_idx + 1..=approach_idx]);
            push_vertical(
                &mut cells,
                approach_col,
                path_cells[approach_idx].row,
                robot.target.row,
            );
        }
        cells.push(robot.target);
        moves.push((*id, Path::new(cells).expect("derived route takes unit steps")));
    }

    let chosen_clause_targets = layout
        .clause_gadgets()
        .iter()
        .zip(&chosen_rows)
        .map(|(gadget, &row)| GridPos::new(gadget.column, row))
        .collect();

    Ok((
        MonotonePlan::new(moves),
        SynthesisTrace {
            verifier_path,
            true_set,
            false_set,
            chosen_clause_targets,
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("plan does not move the verifier robot")]
    VerifierMissing,
    #[error("robots for both polarities of variable {var} move after the verifier")]
    ConflictingPolarity { var: u32 },
    #[error("plan references a robot unknown to the layout: {0}")]
    UnknownRobot(RobotId),
}

/// Reads an assignment off a plan: literals whose robots move after the
/// verifier are set true, and unconstrained variables default to false.
pub fn extract_assignment(
    _instance: &Instance,
    layout: &ReductionLayout,
    plan: &MonotonePlan,
) -> Result<Assignment, ExtractError> {
    let verifier_pos = plan
        .position_of(layout.verifier())
        .ok_or(ExtractError::VerifierMissing)?;
    let num_vars = layout.formula().num_vars() as usize;
    let mut constrained: Vec<Option<bool>> = alloc::vec![None; num_vars];
    for (id, _) in &plan.moves()[verifier_pos + 1..] {
        let kind = layout
            .literal_of_robot(*id)
            .map_err(|_| ExtractError::UnknownRobot(*id))?;
        let RobotKind::Literal(lit) = kind else {
            continue;
        };
        let slot = &mut constrained[lit.var as usize - 1];
        match *slot {
            None => *slot = Some(lit.positive),
            Some(prev) if prev != lit.positive => {
                return Err(ExtractError::ConflictingPolarity { var: lit.var });
            }
            Some(_) => {}
        }
    }
    Ok(Assignment::new(
        constrained.iter().map(|v| v.unwrap_or(false)).collect(),
    ))
}

/// Default robot cap for [`solve_monotone`].
pub const DEFAULT_SOLVER_CAP: usize = 24;

/// Hard limit imposed by the subset bitmask.
pub const MAX_SOLVER_ROBOTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("instance has {robots} robots, above the solver cap of {cap}")]
pub struct SolveCapacityError {
    pub robots: usize,
    pub cap: usize,
}

/// Search counters for the subset solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Distinct moved-robot subsets expanded (move candidates were tried).
    pub states_explored: usize,
    /// Distinct subsets recognized as dead on arrival: some unmoved robot
    /// was already cut off by parked robots alone.
    pub states_pruned: usize,
}

/// Decides monotone feasibility with the default cap. See
/// [`solve_monotone_capped`].
pub fn solve_monotone(instance: &Instance) -> Result<Option<MonotonePlan>, SolveCapacityError> {
    solve_monotone_capped(instance, DEFAULT_SOLVER_CAP).map(|(plan, _)| plan)
}

/// Complete memoized search over moved-robot subsets.
///
/// After any prefix of moves the world depends only on the set of robots
/// already moved (they sit at targets; the rest sit at starts), so subsets
/// are searched depth-first, trying robots in index order, with dead
/// subsets memoized. Two refinements keep the search small without giving
/// up completeness or the deterministic result:
///
/// - Robots at targets never vacate, so a subset where some unmoved robot
///   has no path through the parked robots alone is dead on arrival. This
///   cannot fire on a subset that still admits a completion.
/// - Monotone plans reverse: a plan run backwards solves the instance with
///   starts and targets swapped. The verdict is therefore decided on the
///   reversed instance, whose packed target side usually collapses the
///   branching much earlier; only when it is feasible does the forward
///   search run, and the returned plan is its first one in robot-index
///   order, exactly as if the forward search ran alone.
pub fn solve_monotone_capped(
    instance: &Instance,
    cap: usize,
) -> Result<(Option<MonotonePlan>, SolveStats), SolveCapacityError> {
    let n = instance.robot_count();
    let cap = cap.min(MAX_SOLVER_ROBOTS);
    if n > cap {
        return Err(SolveCapacityError { robots: n, cap });
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut stats = SolveStats::default();

    let reversed = instance.reversed();
    let mut dead: BTreeSet<u64> = BTreeSet::new();
    let mut order: Vec<(RobotId, Path)> = Vec::new();
    if !search(&reversed, 0, full, &mut order, &mut dead, &mut stats) {
        return Ok((None, stats));
    }

    let mut dead: BTreeSet<u64> = BTreeSet::new();
    let mut order: Vec<(RobotId, Path)> = Vec::new();
    let found = search(instance, 0, full, &mut order, &mut dead, &mut stats);
    debug_assert!(found, "forward search agrees with the reversed verdict");
    let plan = found.then(|| MonotonePlan::new(order));
    Ok((plan, stats))
}

fn search(
    instance: &Instance,
    state: u64,
    full: u64,
    order: &mut Vec<(RobotId, Path)>,
    dead: &mut BTreeSet<u64>,
    stats: &mut SolveStats,
) -> bool {
    if state == full {
        return true;
    }
    if dead.contains(&state) {
        return false;
    }

    let robots = instance.robots();

    // Parked robots never vacate their targets: an unmoved robot with no
    // path through them alone can never move again, so no completion exists
    // from this subset.
    let parked: BTreeSet<GridPos> = robots
        .iter()
        .enumerate()
        .filter(|(index, _)| state & (1 << *index) != 0)
        .map(|(_, r)| r.target)
        .collect();
    for (index, robot) in robots.iter().enumerate() {
        if state & (1 << index) != 0 {
            continue;
        }
        let reachable = shortest_path(instance.workspace(), robot.start, robot.target, &parked)
            .expect("endpoints are never parked targets in reachable subsets");
        if reachable.is_none() {
            stats.states_pruned += 1;
            dead.insert(state);
            return false;
        }
    }

    stats.states_explored += 1;
    for (index, robot) in robots.iter().enumerate() {
        if state & (1 << index) != 0 {
            continue;
        }
        // Stationary robots: unmoved ones at their starts, moved ones at
        // their targets.
        let mut occupied: BTreeSet<GridPos> = BTreeSet::new();
        for (other, r) in robots.iter().enumerate() {
            if other == index {
                continue;
            }
            if state & (1 << other) != 0 {
                occupied.insert(r.target);
            } else {
                occupied.insert(r.start);
            }
        }
        if occupied.contains(&robot.start) || occupied.contains(&robot.target) {
            continue;
        }
        let path = shortest_path(instance.workspace(), robot.start, robot.target, &occupied)
            .expect("endpoints checked against the occupied set");
        let Some(path) = path else {
            continue;
        };
        order.push((robot.id, path));
        if search(instance, state | (1 << index), full, order, dead, stats) {
            return true;
        }
        order.pop();
    }
    dead.insert(state);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::validate_monotone_plan;
    use crate::reduction::build_instance;
    use crate::sat::{example_formula, parse_dimacs, Assignment};
    use alloc::vec;

    fn example() -> (Instance, ReductionLayout) {
        build_instance(&example_formula())
    }

    #[test]
    fn synthesized_example_plan_matches_known_order() {
        let (instance, layout) = example();
        let assignment = Assignment::new(vec![true, false, true]);
        let (plan, trace) = synthesize_plan(&instance, &layout, &assignment).unwrap();
        let labels: Vec<&str> = plan
            .moves()
            .iter()
            .map(|(id, _)| instance.robots()[id.index()].label.as_str())
            .collect();
        assert_eq!(
            labels,
            [
                "\u{ac}c1",
                "b1",
                "\u{ac}a1",
                "r*",
                "a2",
                "a1",
                "\u{ac}b2",
                "c2",
                "\u{ac}b1",
                "c1"
            ]
        );
        assert_eq!(validate_monotone_plan(&instance, &plan), Ok(()));
        assert!(is_weakly_x_monotone(&trace.verifier_path));
        assert_eq!(
            trace.chosen_clause_targets,
            vec![GridPos::new(11, 1), GridPos::new(13, 0), GridPos::new(15, 0)]
        );
    }

    #[test]
    fn synthesis_handles_other_satisfying_assignments() {
        let (instance, layout) = example();
        let assignment = Assignment::new(vec![true, true, true]);
        let (plan, trace) = synthesize_plan(&instance, &layout, &assignment).unwrap();
        assert_eq!(validate_monotone_plan(&instance, &plan), Ok(()));
        assert!(is_weakly_x_monotone(&trace.verifier_path));
        for (_, path) in plan.moves() {
            assert!(path.len() >= 1);
        }
    }

    #[test]
    fn synthesis_rejects_non_satisfying_assignment() {
        let (instance, layout) = example();
        // a=F, b=T, c=F falsifies the first clause? (~a|~b|c) = T|F|F = true;
        // (a|~b|c) = F|F|F = false -> clause 1.
        let assignment = Assignment::new(vec![false, true, false]);
        let err = synthesize_plan(&instance, &layout, &assignment).unwrap_err();
        assert_eq!(err, SynthesisError::UnsatisfiedClause { clause: 1 });
    }

    #[test]
    fn zero_clause_synthesis_is_the_corridor_walk() {
        let formula = parse_dimacs("p cnf 0 0").unwrap();
        let (instance, layout) = build_instance(&formula);
        let (plan, _) = synthesize_plan(&instance, &layout, &Assignment::new(vec![])).unwrap();
        assert_eq!(plan.len(), 1);
        assert_eq!(
            plan.moves()[0].1.cells(),
            &[GridPos::new(0, 1), GridPos::new(1, 1)]
        );
        assert_eq!(validate_monotone_plan(&instance, &plan), Ok(()));
    }

    #[test]
    fn extraction_reads_the_true_set() {
        let (instance, layout) = example();
        let assignment = Assignment::new(vec![true, false, true]);
        let (plan, _) = synthesize_plan(&instance, &layout, &assignment).unwrap();
        let extracted = extract_assignment(&instance, &layout, &plan).unwrap();
        assert_eq!(extracted.values(), &[true, false, true]);
        assert_eq!(
            crate::sat::evaluate(layout.formula(), &extracted),
            Ok(true)
        );
    }

    #[test]
    fn extraction_of_zero_clause_plan_is_empty() {
        let formula = parse_dimacs("p cnf 0 0").unwrap();
        let (instance, layout) = build_instance(&formula);
        let (plan, _) = synthesize_plan(&instance, &layout, &Assignment::new(vec![])).unwrap();
        let extracted = extract_assignment(&instance, &layout, &plan).unwrap();
        assert!(extracted.values().is_empty());
    }

    #[test]
    fn solver_finds_example_feasible() {
        let (instance, _) = example();
        let plan = solve_monotone(&instance).unwrap().expect("feasible");
        assert_eq!(plan.len(), 10);
        assert_eq!(validate_monotone_plan(&instance, &plan), Ok(()));
    }

    #[test]
    fn solver_trivial_cases() {
        use crate::grid::{Robot, RobotRole, Workspace};
        let ws = Workspace::new(2, 2, []).unwrap();
        let robot = Robot {
            id: RobotId(0),
            label: "r0".into(),
            role: RobotRole::Literal,
            start: GridPos::new(0, 0),
            target: GridPos::new(0, 0),
        };
        let instance = Instance::new(ws, vec![robot]).unwrap();
        let plan = solve_monotone(&instance).unwrap().expect("feasible");
        assert_eq!(plan.moves()[0].1.cells(), &[GridPos::new(0, 0)]);

        let empty = Instance::new(Workspace::new(1, 1, []).unwrap(), vec![]).unwrap();
        assert!(solve_monotone(&empty).unwrap().is_some());
    }

    #[test]
    fn solver_respects_cap() {
        let formula = parse_dimacs(
            "p cnf 3 8\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n-1 -2 3 0\n1 2 -3 0\n-1 2 -3 0\n1 -2 -3 0\n-1 -2 -3 0",
        )
        .unwrap();
        let (instance, _) = build_instance(&formula);
        assert_eq!(instance.robot_count(), 25);
        let err = solve_monotone(&instance).unwrap_err();
        assert_eq!(err.robots, 25);
        assert_eq!(err.cap, DEFAULT_SOLVER_CAP);
    }

    #[test]
    fn solver_proves_corridor_swap_infeasible() {
        use crate::grid::{Robot, RobotRole, Workspace};
        let ws = Workspace::new(2, 1, []).unwrap();
        let robots = vec![
            Robot {
                id: RobotId(0),
                label: "r0".into(),
                role: RobotRole::Literal,
                start: GridPos::new(0, 0),
                target: GridPos::new(1, 0),
            },
            Robot {
                id: RobotId(1),
                label: "r1".into(),
                role: RobotRole::Literal,
                start: GridPos::new(1, 0),
                target: GridPos::new(0, 0),
            },
        ];
        let instance = Instance::new(ws, robots).unwrap();
        assert!(solve_monotone(&instance).unwrap().is_none());
    }
}
