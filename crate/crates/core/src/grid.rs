//! Grid workspace model, single-robot breadth-first pathfinding, and the
//! monotone-plan validator.
//!
//! A workspace is a rectangle of unit cells, some of which are immovable
//! obstacles. Robots occupy exactly one cell and move in 4-connected steps;
//! a monotone plan moves each robot exactly once, start to target, while
//! every other robot stands still.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use core::fmt;

use thiserror::Error;

/// A cell position. `col` grows rightward, `row` grows downward (row 0 is
/// the top row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPos {
    pub col: u32,
    pub row: u32,
}

impl GridPos {
    pub const fn new(col: u32, row: u32) -> Self {
        Self { col, row }
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkspaceError {
    #[error("workspace must be at least 1x1, got {width}x{height}")]
    EmptyWorkspace { width: u32, height: u32 },
    #[error("obstacle {0} lies outside the {1}x{2} workspace")]
    ObstacleOutOfBounds(GridPos, u32, u32),
}

/// A rectangular grid with a set of obstacle cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    width: u32,
    height: u32,
    obstacles: BTreeSet<GridPos>,
}

impl Workspace {
    pub fn new(
        width: u32,
        height: u32,
        obstacles: impl IntoIterator<Item = GridPos>,
    ) -> Result<Self, WorkspaceError> {
        if width == 0 || height == 0 {
            return Err(WorkspaceError::EmptyWorkspace { width, height });
        }
        let obstacles: BTreeSet<GridPos> = obstacles.into_iter().collect();
        for &cell in &obstacles {
            if cell.col >= width || cell.row >= height {
                return Err(WorkspaceError::ObstacleOutOfBounds(cell, width, height));
            }
        }
        Ok(Self {
            width,
            height,
            obstacles,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn in_bounds(&self, pos: GridPos) -> bool {
        pos.col < self.width && pos.row < self.height
    }

    pub fn is_obstacle(&self, pos: GridPos) -> bool {
        self.obstacles.contains(&pos)
    }

    /// In bounds and not an obstacle.
    pub fn is_free(&self, pos: GridPos) -> bool {
        self.in_bounds(pos) && !self.is_obstacle(pos)
    }

    /// Obstacles in sorted (col, row) order.
    pub fn obstacles(&self) -> impl Iterator<Item = GridPos> + '_ {
        self.obstacles.iter().copied()
    }

    pub fn obstacle_count(&self) -> usize {
        self.obstacles.len()
    }

    fn index(&self, pos: GridPos) -> usize {
        (pos.row * self.width + pos.col) as usize
    }
}

/// Dense robot index, 0..n-1 in instance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RobotId(pub u32);

impl RobotId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for RobotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RobotRole {
    Literal,
    Verifier,
}

/// A unit-square robot with a start and a target cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Robot {
    pub id: RobotId,
    pub label: String,
    pub role: RobotRole,
    pub start: GridPos,
    pub target: GridPos,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("robot at list position {position} has id {id}, expected dense ids 0..n-1")]
    NonDenseIds { position: usize, id: RobotId },
    #[error("robot {id} endpoint {cell} is out of bounds")]
    EndpointOutOfBounds { id: RobotId, cell: GridPos },
    #[error("robot {id} endpoint {cell} is an obstacle")]
    EndpointOnObstacle { id: RobotId, cell: GridPos },
    #[error("robots {first} and {second} share the start cell {cell}")]
    DuplicateStart {
        first: RobotId,
        second: RobotId,
        cell: GridPos,
    },
    #[error("robots {first} and {second} share the target cell {cell}")]
    DuplicateTarget {
        first: RobotId,
        second: RobotId,
        cell: GridPos,
    },
    #[error("instance has more than one verifier robot ({first} and {second})")]
    MultipleVerifiers { first: RobotId, second: RobotId },
}

/// A monotone MRMP instance: a workspace plus labeled robots.
///
/// Starts are pairwise distinct and targets are pairwise distinct, but a
/// start of one robot may coincide with a target of another; occupancy is
/// resolved move by move in [`validate_monotone_plan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    workspace: Workspace,
    robots: Vec<Robot>,
}

impl Instance {
    pub fn new(workspace: Workspace, robots: Vec<Robot>) -> Result<Self, InstanceError> {
        let mut verifier: Option<RobotId> = None;
        for (position, robot) in robots.iter().enumerate() {
            if robot.id.index() != position {
                return Err(InstanceError::NonDenseIds {
                    position,
                    id: robot.id,
                });
            }
            for cell in [robot.start, robot.target] {
                if !workspace.in_bounds(cell) {
                    return Err(InstanceError::EndpointOutOfBounds {
                        id: robot.id,
                        cell,
                    });
                }
                if workspace.is_obstacle(cell) {
                    return Err(InstanceError::EndpointOnObstacle {
                        id: robot.id,
                        cell,
                    });
                }
            }
            if robot.role == RobotRole::Verifier {
                match verifier {
                    None => verifier = Some(robot.id),
                    Some(first) => {
                        return Err(InstanceError::MultipleVerifiers {
                            first,
                            second: robot.id,
                        })
                    }
                }
            }
        }
        for (i, a) in robots.iter().enumerate() {
            for b in robots.iter().skip(i + 1) {
                if a.start == b.start {
                    return Err(InstanceError::DuplicateStart {
                        first: a.id,
                        second: b.id,
                        cell: a.start,
                    });
                }
                if a.target == b.target {
                    return Err(InstanceError::DuplicateTarget {
                        first: a.id,
                        second: b.id,
                        cell: a.target,
                    });
                }
            }
        }
        Ok(Self { workspace, robots })
    }

    pub fn workspace(&self) -> &Workspace {
        &self.workspace
    }

    pub fn robots(&self) -> &[Robot] {
        &self.robots
    }

    pub fn robot(&self, id: RobotId) -> Option<&Robot> {
        self.robots.get(id.index())
    }

    pub fn robot_count(&self) -> usize {
        self.robots.len()
    }

    pub fn verifier(&self) -> Option<&Robot> {
        self.robots.iter().find(|r| r.role == RobotRole::Verifier)
    }

    /// The instance with every robot's start and target swapped.
    ///
    /// Monotone plans are reversible: running a plan's moves in reverse
    /// order, each along its reversed path, solves the reversed instance,
    /// so both instances are feasible or infeasible together.
    pub fn reversed(&self) -> Instance {
        let robots = self
            .robots
            .iter()
            .map(|r| Robot {
                id: r.id,
                label: r.label.clone(),
                role: r.role,
                start: r.target,
                target: r.start,
            })
            .collect();
        Instance::new(self.workspace.clone(), robots)
            .expect("swapping starts and targets preserves validity")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path must contain at least one cell")]
    Empty,
    #[error("path step {index} is not a 4-adjacent move ({from} to {to})")]
    NonAdjacentStep {
        index: usize,
        from: GridPos,
        to: GridPos,
    },
}

/// A 4-connected cell sequence. A single-cell path denotes a robot that does
/// not leave its cell. Cells may repeat; obstacle and bounds checks are the
/// validator's job because they depend on the owning workspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    cells: Vec<GridPos>,
}

fn is_adjacent(a: GridPos, b: GridPos) -> bool {
    let dc = a.col.abs_diff(b.col);
    let dr = a.row.abs_diff(b.row);
    dc + dr == 1
}

impl Path {
    pub fn new(cells: Vec<GridPos>) -> Result<Self, PathError> {
        if cells.is_empty() {
            return Err(PathError::Empty);
        }
        for (index, pair) in cells.windows(2).enumerate() {
            if !is_adjacent(pair[0], pair[1]) {
                return Err(PathError::NonAdjacentStep {
                    index,
                    from: pair[0],
                    to: pair[1],
                });
            }
        }
        Ok(Self { cells })
    }

    pub fn single(cell: GridPos) -> Self {
        Self {
            cells: alloc::vec![cell],
        }
    }

    pub fn cells(&self) -> &[GridPos] {
        &self.cells
    }

    pub fn start(&self) -> GridPos {
        self.cells[0]
    }

    pub fn end(&self) -> GridPos {
        *self.cells.last().expect("paths are nonempty")
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One move per robot, in execution order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonePlan {
    moves: Vec<(RobotId, Path)>,
}

impl MonotonePlan {
    pub fn new(moves: Vec<(RobotId, Path)>) -> Self {
        Self { moves }
    }

    pub fn moves(&self) -> &[(RobotId, Path)] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Position of a robot's move in the plan, if present.
    pub fn position_of(&self, id: RobotId) -> Option<usize> {
        self.moves.iter().position(|(rid, _)| *rid == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathQueryError {
    #[error("endpoint {0} lies outside the workspace")]
    OutOfBounds(GridPos),
    #[error("endpoint {0} is an obstacle cell")]
    Obstacle(GridPos),
    #[error("endpoint {0} is occupied")]
    Occupied(GridPos),
}

/// Neighbor expansion order: right, down, up, left. Fixed so that every
/// path this module produces is reproducible byte for byte.
fn neighbors(pos: GridPos) -> [Option<GridPos>; 4] {
    [
        Some(GridPos::new(pos.col + 1, pos.row)),
        Some(GridPos::new(pos.col, pos.row + 1)),
        pos.row.checked_sub(1).map(|r| GridPos::new(pos.col, r)),
        pos.col.checked_sub(1).map(|c| GridPos::new(c, pos.row)),
    ]
}

/// Minimum-length 4-connected path from `from` to `to` avoiding obstacles
/// and `occupied` cells, or `None` if the endpoints are disconnected.
///
/// Breadth-first search with the fixed expansion order right, down, up,
/// left; ties always resolve the same way.
pub fn shortest_path(
    workspace: &Workspace,
    from: GridPos,
    to: GridPos,
    occupied: &BTreeSet<GridPos>,
) -> Result<Option<Path>, PathQueryError> {
    for endpoint in [from, to] {
        if !workspace.in_bounds(endpoint) {
            return Err(PathQueryError::OutOfBounds(endpoint));
        }
        if workspace.is_obstacle(endpoint) {
            return Err(PathQueryError::Obstacle(endpoint));
        }
        if occupied.contains(&endpoint) {
            return Err(PathQueryError::Occupied(endpoint));
        }
    }
    if from == to {
        return Ok(Some(Path::single(from)));
    }

    let cell_count = (workspace.width * workspace.height) as usize;
    let mut parent: Vec<u32> = alloc::vec![u32::MAX; cell_count];
    let mut seen: Vec<bool> = alloc::vec![false; cell_count];
    let mut queue: VecDeque<GridPos> = VecDeque::new();

    seen[workspace.index(from)] = true;
    queue.push_back(from);

    while let Some(cur) = queue.pop_front() {
        for next in neighbors(cur).into_iter().flatten() {
            if !workspace.in_bounds(next) {
                continue;
            }
            let idx = workspace.index(next);
            if seen[idx] || workspace.is_obstacle(next) || occupied.contains(&next) {
                continue;
            }
            seen[idx] = true;
            parent[idx] = workspace.index(cur) as u32;
            if next == to {
                let mut cells = alloc::vec![to];
                let mut at = idx;
                while parent[at] != u32::MAX {
                    at = parent[at] as usize;
                    cells.push(GridPos::new(
                        at as u32 % workspace.width,
                        at as u32 / workspace.width,
                    ));
                }
                cells.reverse();
                return Ok(Some(Path::new(cells).expect("BFS emits adjacent steps")));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCause {
    Obstacle,
    OutOfBounds,
    StationaryRobot,
    DuplicateRobot,
    MissingRobot,
    EndpointMismatch,
}

impl fmt::Display for ViolationCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationCause::Obstacle => "obstacle",
            ViolationCause::OutOfBounds => "out-of-bounds",
            ViolationCause::StationaryRobot => "stationary-robot",
            ViolationCause::DuplicateRobot => "duplicate-robot",
            ViolationCause::MissingRobot => "missing-robot",
            ViolationCause::EndpointMismatch => "endpoint-mismatch",
        };
        f.write_str(s)
    }
}

/// First offence found while simulating a plan.
///
/// `move_index` is the offending move (for a missing robot it is the plan
/// length, i.e. one past the final move), `path_index` the offending cell
/// within that move's path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub move_index: usize,
    pub path_index: usize,
    pub cell: GridPos,
    pub cause: ViolationCause,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "move {} step {} cell {}: {}",
            self.move_index, self.path_index, self.cell, self.cause
        )
    }
}

/// Simulates the plan move by move: robots not yet moved sit at their
/// starts, robots already moved sit at their targets, and every path cell
/// must be in bounds, free of obstacles, and unoccupied by any stationary
/// robot. The moving robot's own start and target cells are allowed for
/// itself.
pub fn validate_monotone_plan(instance: &Instance, plan: &MonotonePlan) -> Result<(), Violation> {
    let n = instance.robot_count();
    let mut positions: Vec<GridPos> = instance.robots().iter().map(|r| r.start).collect();
    let mut moved: Vec<bool> = alloc::vec![false; n];
    let workspace = instance.workspace();

    for (move_index, (id, path)) in plan.moves().iter().enumerate() {
        let violation = |path_index: usize, cell: GridPos, cause: ViolationCause| Violation {
            move_index,
            path_index,
            cell,
            cause,
        };
        let Some(robot) = instance.robot(*id) else {
            // An id the instance does not know references a missing robot.
            return Err(violation(0, path.start(), ViolationCause::MissingRobot));
        };
        if moved[id.index()] {
            return Err(violation(0, path.start(), ViolationCause::DuplicateRobot));
        }
        if path.start() != robot.start {
            return Err(violation(0, path.start(), ViolationCause::EndpointMismatch));
        }
        if path.end() != robot.target {
            return Err(violation(
                path.len() - 1,
                path.end(),
                ViolationCause::EndpointMismatch,
            ));
        }
        for (path_index, &cell) in path.cells().iter().enumerate() {
            if !workspace.in_bounds(cell) {
                return Err(violation(path_index, cell, ViolationCause::OutOfBounds));
            }
            if workspace.is_obstacle(cell) {
                return Err(violation(path_index, cell, ViolationCause::Obstacle));
            }
            for (other, &pos) in positions.iter().enumerate() {
                if other != id.index() && pos == cell {
                    return Err(violation(path_index, cell, ViolationCause::StationaryRobot));
                }
            }
        }
        positions[id.index()] = robot.target;
        moved[id.index()] = true;
    }

    if let Some(missing) = moved.iter().position(|m| !m) {
        return Err(Violation {
            move_index: plan.len(),
            path_index: 0,
            cell: instance.robots()[missing].start,
            cause: ViolationCause::MissingRobot,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn ws(width: u32, height: u32, obstacles: &[(u32, u32)]) -> Workspace {
        Workspace::new(
            width,
            height,
            obstacles.iter().map(|&(c, r)| GridPos::new(c, r)),
        )
        .unwrap()
    }

    fn robot(id: u32, start: (u32, u32), target: (u32, u32)) -> Robot {
        Robot {
            id: RobotId(id),
            label: alloc::format!("r{id}"),
            role: RobotRole::Literal,
            start: GridPos::new(start.0, start.1),
            target: GridPos::new(target.0, target.1),
        }
    }

    fn occ(cells: &[(u32, u32)]) -> BTreeSet<GridPos> {
        cells.iter().map(|&(c, r)| GridPos::new(c, r)).collect()
    }

    #[test]
    fn shortest_path_identity() {
        let w = ws(3, 3, &[]);
        let p = shortest_path(&w, GridPos::new(0, 0), GridPos::new(0, 0), &occ(&[]))
            .unwrap()
            .unwrap();
        assert_eq!(p.cells(), &[GridPos::new(0, 0)]);
    }

    #[test]
    fn shortest_path_detours_around_occupied_cell() {
        let w = ws(3, 3, &[]);
        let p = shortest_path(&w, GridPos::new(0, 0), GridPos::new(2, 0), &occ(&[(1, 0)]))
            .unwrap()
            .unwrap();
        assert_eq!(
            p.cells(),
            &[
                GridPos::new(0, 0),
                GridPos::new(0, 1),
                GridPos::new(1, 1),
                GridPos::new(2, 1),
                GridPos::new(2, 0),
            ]
        );
    }

    #[test]
    fn shortest_path_reports_disconnection() {
        let w = ws(3, 3, &[]);
        let blocked = occ(&[(1, 0), (1, 1), (1, 2)]);
        let p = shortest_path(&w, GridPos::new(0, 0), GridPos::new(2, 0), &blocked).unwrap();
        assert!(p.is_none());
    }

    #[test]
    fn shortest_path_rejects_bad_endpoints() {
        let w = ws(2, 2, &[(1, 1)]);
        assert_eq!(
            shortest_path(&w, GridPos::new(0, 0), GridPos::new(5, 0), &occ(&[])),
            Err(PathQueryError::OutOfBounds(GridPos::new(5, 0)))
        );
        assert_eq!(
            shortest_path(&w, GridPos::new(1, 1), GridPos::new(0, 0), &occ(&[])),
            Err(PathQueryError::Obstacle(GridPos::new(1, 1)))
        );
        assert_eq!(
            shortest_path(&w, GridPos::new(0, 0), GridPos::new(1, 0), &occ(&[(1, 0)])),
            Err(PathQueryError::Occupied(GridPos::new(1, 0)))
        );
    }

    #[test]
    fn path_rejects_teleports_and_empty() {
        assert_eq!(Path::new(vec![]), Err(PathError::Empty));
        let err = Path::new(vec![GridPos::new(0, 0), GridPos::new(2, 0)]).unwrap_err();
        assert!(matches!(err, PathError::NonAdjacentStep { index: 0, .. }));
        // Waiting in place is not a step.
        assert!(Path::new(vec![GridPos::new(0, 0), GridPos::new(0, 0)]).is_err());
    }

    #[test]
    fn single_robot_plan_validates() {
        let instance = Instance::new(ws(2, 1, &[]), vec![robot(0, (0, 0), (1, 0))]).unwrap();
        let plan = MonotonePlan::new(vec![(
            RobotId(0),
            Path::new(vec![GridPos::new(0, 0), GridPos::new(1, 0)]).unwrap(),
        )]);
        assert_eq!(validate_monotone_plan(&instance, &plan), Ok(()));
    }

    #[test]
    fn corridor_swap_is_infeasible_in_both_orders() {
        // Two robots facing each other in a 1x2 corridor: each target is the
        // other's start, so whichever moves first walks into a stationary
        // robot.
        let instance = Instance::new(
            ws(2, 1, &[]),
            vec![robot(0, (0, 0), (1, 0)), robot(1, (1, 0), (0, 0))],
        )
        .unwrap();
        let path01 = Path::new(vec![GridPos::new(0, 0), GridPos::new(1, 0)]).unwrap();
        let path10 = Path::new(vec![GridPos::new(1, 0), GridPos::new(0, 0)]).unwrap();
        for order in [[0u32, 1u32], [1, 0]] {
            let plan = MonotonePlan::new(
                order
                    .iter()
                    .map(|&i| {
                        (
                            RobotId(i),
                            if i == 0 { path01.clone() } else { path10.clone() },
                        )
                    })
                    .collect(),
            );
            let violation = validate_monotone_plan(&instance, &plan).unwrap_err();
            assert_eq!(violation.cause, ViolationCause::StationaryRobot);
            assert_eq!(violation.move_index, 0);
            assert_eq!(violation.path_index, 1);
        }
    }

    #[test]
    fn validator_reports_duplicate_and_missing_robots() {
        let instance = Instance::new(
            ws(4, 1, &[]),
            vec![robot(0, (0, 0), (1, 0)), robot(1, (2, 0), (3, 0))],
        )
        .unwrap();
        let path0 = Path::new(vec![GridPos::new(0, 0), GridPos::new(1, 0)]).unwrap();
        let dup = MonotonePlan::new(vec![(RobotId(0), path0.clone()), (RobotId(0), path0.clone())]);
        let v = validate_monotone_plan(&instance, &dup).unwrap_err();
        assert_eq!(v.cause, ViolationCause::DuplicateRobot);
        assert_eq!(v.move_index, 1);

        let missing = MonotonePlan::new(vec![(RobotId(0), path0)]);
        let v = validate_monotone_plan(&instance, &missing).unwrap_err();
        assert_eq!(v.cause, ViolationCause::MissingRobot);
        assert_eq!(v.move_index, 1);
        assert_eq!(v.cell, GridPos::new(2, 0));
    }

    #[test]
    fn validator_reports_endpoint_mismatch() {
        let instance = Instance::new(ws(3, 1, &[]), vec![robot(0, (0, 0), (2, 0))]).unwrap();
        let short = MonotonePlan::new(vec![(
            RobotId(0),
            Path::new(vec![GridPos::new(0, 0), GridPos::new(1, 0)]).unwrap(),
        )]);
        let v = validate_monotone_plan(&instance, &short).unwrap_err();
        assert_eq!(v.cause, ViolationCause::EndpointMismatch);
        assert_eq!(v.path_index, 1);
        assert_eq!(v.cell, GridPos::new(1, 0));
    }

    #[test]
    fn validator_reports_obstacle_and_out_of_bounds() {
        // Plans decoded against the wrong workspace can step on obstacles or
        // leave the grid even though Path construction already checked
        // adjacency.
        let instance = Instance::new(ws(3, 2, &[(1, 0)]), vec![robot(0, (0, 0), (2, 0))]).unwrap();
        let through = MonotonePlan::new(vec![(
            RobotId(0),
            Path::new(vec![GridPos::new(0, 0), GridPos::new(1, 0), GridPos::new(2, 0)]).unwrap(),
        )]);
        let v = validate_monotone_plan(&instance, &through).unwrap_err();
        assert_eq!(v.cause, ViolationCause::Obstacle);
        assert_eq!(v.cell, GridPos::new(1, 0));

        let tall = Instance::new(ws(3, 1, &[]), vec![robot(0, (0, 0), (2, 0))]).unwrap();
        let dip = MonotonePlan::new(vec![(
            RobotId(0),
            Path::new(vec![
                GridPos::new(0, 0),
                GridPos::new(0, 1),
                GridPos::new(1, 1),
                GridPos::new(1, 0),
                GridPos::new(2, 0),
            ])
            .unwrap(),
        )]);
        let v = validate_monotone_plan(&tall, &dip).unwrap_err();
        assert_eq!(v.cause, ViolationCause::OutOfBounds);
        assert_eq!(v.path_index, 1);
    }

    #[test]
    fn instance_invariants_are_enforced() {
        let w = ws(3, 3, &[(1, 1)]);
        assert!(matches!(
            Instance::new(
                w.clone(),
                vec![robot(0, (0, 0), (2, 2)), robot(1, (0, 0), (2, 1))]
            ),
            Err(InstanceError::DuplicateStart { .. })
        ));
        assert!(matches!(
            Instance::new(w.clone(), vec![robot(0, (1, 1), (2, 2))]),
            Err(InstanceError::EndpointOnObstacle { .. })
        ));
        assert!(matches!(
            Instance::new(w.clone(), vec![robot(3, (0, 0), (2, 2))]),
            Err(InstanceError::NonDenseIds { .. })
        ));
        // A start may coincide with another robot's target.
        let ok = Instance::new(
            w,
            vec![robot(0, (0, 0), (0, 1)), robot(1, (0, 1), (2, 2))],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn violation_display_is_stable() {
        let v = Violation {
            move_index: 3,
            path_index: 2,
            cell: GridPos::new(5, 1),
            cause: ViolationCause::StationaryRobot,
        };
        assert_eq!(v.to_string(), "move 3 step 2 cell (5,1): stationary-robot");
    }
}
