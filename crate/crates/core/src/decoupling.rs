//! Decoupled execution sequences: ordered partitions of the robots where
//! each group reaches its targets while earlier groups sit at their targets
//! and later groups sit at their starts.
//!
//! Group feasibility is decided by breadth-first search over the joint
//! configuration space: robots in the group move one cell at a time, in any
//! interleaving, amid the static obstacles. A sequence of dimension 1 is
//! exactly a monotone plan, so that case delegates to the monotone solver.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use thiserror::Error;

use crate::grid::{GridPos, Instance, RobotId, Workspace};
use crate::planning::{solve_monotone_capped, SolveCapacityError, DEFAULT_SOLVER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("group {index} is empty")]
    EmptyGroup { index: usize },
    #[error("group {index} references unknown robot {id}")]
    UnknownRobot { index: usize, id: RobotId },
    #[error("robot {id} appears in more than one group")]
    OverlappingRobot { id: RobotId },
    #[error("robot {id} appears in no group")]
    MissingRobot { id: RobotId },
}

/// An ordered partition of the robots. Construction enforces that the
/// groups are nonempty, pairwise disjoint, and together cover every robot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSequence {
    groups: Vec<Vec<RobotId>>,
}

impl SolutionSequence {
    pub fn new(groups: Vec<Vec<RobotId>>, robot_count: usize) -> Result<Self, PartitionError> {
        let mut seen = alloc::vec![false; robot_count];
        for (index, group) in groups.iter().enumerate() {
            if group.is_empty() {
                return Err(PartitionError::EmptyGroup { index });
            }
            for &id in group {
                if id.index() >= robot_count {
                    return Err(PartitionError::UnknownRobot { index, id });
                }
                if seen[id.index()] {
                    return Err(PartitionError::OverlappingRobot { id });
                }
                seen[id.index()] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::MissingRobot {
                id: RobotId(missing as u32),
            });
        }
        let groups = groups
            .into_iter()
            .map(|mut g| {
                g.sort();
                g
            })
            .collect();
        Ok(Self { groups })
    }

    /// One group per robot, in the given order.
    pub fn singletons(order: impl IntoIterator<Item = RobotId>, robot_count: usize) -> Result<Self, PartitionError> {
        Self::new(
            order.into_iter().map(|id| alloc::vec![id]).collect(),
            robot_count,
        )
    }

    pub fn groups(&self) -> &[Vec<RobotId>] {
        &self.groups
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Size of the largest group; 0 for the empty sequence.
    pub fn dimension(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Coupled-search cap: joint BFS explores up to (cells)^size states.
pub const DEFAULT_GROUP_CAP: usize = 3;

/// Robot cap for exhaustive partition search at dimension 2 and above.
pub const DEFAULT_DECOUPLING_ROBOT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecouplingError {
    #[error("group {group} has {size} robots, above the coupled-search cap of {cap}")]
    GroupTooLarge {
        group: usize,
        size: usize,
        cap: usize,
    },
    #[error("instance has {robots} robots, above the decoupling cap of {cap}")]
    TooManyRobots { robots: usize, cap: usize },
    #[error("requested dimension {max_dim} exceeds the coupled-search cap of {cap}")]
    DimensionAboveGroupCap { max_dim: usize, cap: usize },
    #[error(transparent)]
    Solver(#[from] SolveCapacityError),
}

/// Outcome of checking a sequence group by group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceCheck {
    Valid,
    /// Index of the first group that cannot jointly reach its targets.
    FailingGroup(usize),
}

/// Checks a sequence with the default coupled-search cap.
pub fn validate_solution_sequence(
    instance: &Instance,
    sequence: &SolutionSequence,
) -> Result<SequenceCheck, DecouplingError> {
    validate_solution_sequence_capped(instance, sequence, DEFAULT_GROUP_CAP)
}

/// For each group i, robots of earlier groups are placed as obstacles at
/// their targets and robots of later groups at their starts; the group must
/// then jointly reach its targets.
pub fn validate_solution_sequence_capped(
    instance: &Instance,
    sequence: &SolutionSequence,
    group_cap: usize,
) -> Result<SequenceCheck, DecouplingError> {
    let robots = instance.robots();
    for (index, group) in sequence.groups().iter().enumerate() {
        if group.len() > group_cap {
            return Err(DecouplingError::GroupTooLarge {
                group: index,
                size: group.len(),
                cap: group_cap,
            });
        }
        let mut static_cells: BTreeSet<GridPos> = BTreeSet::new();
        for (other_index, other) in sequence.groups().iter().enumerate() {
            for &id in other {
                if other_index < index {
                    static_cells.insert(robots[id.index()].target);
                } else if other_index > index {
                    static_cells.insert(robots[id.index()].start);
                }
            }
        }
        let members: Vec<(GridPos, GridPos)> = group
            .iter()
            .map(|id| (robots[id.index()].start, robots[id.index()].target))
            .collect();
        if !group_feasible(instance.workspace(), &static_cells, &members) {
            return Ok(SequenceCheck::FailingGroup(index));
        }
    }
    Ok(SequenceCheck::Valid)
}

/// Joint breadth-first search: one robot moves one cell per transition,
/// robots stay pairwise distinct, and all cells avoid obstacles and the
/// static set.
fn group_feasible(
    workspace: &Workspace,
    static_cells: &BTreeSet<GridPos>,
    members: &[(GridPos, GridPos)],
) -> bool {
    let blocked = |cell: GridPos| {
        !workspace.is_free(cell) || static_cells.contains(&cell)
    };
    if members.iter().any(|&(s, t)| blocked(s) || blocked(t)) {
        return false;
    }
    let width = workspace.width();
    let encode = |cells: &[GridPos]| -> Vec<u32> {
        cells.iter().map(|c| c.row * width + c.col).collect()
    };
    let start: Vec<GridPos> = members.iter().map(|&(s, _)| s).collect();
    let goal: Vec<GridPos> = members.iter().map(|&(_, t)| t).collect();
    if start == goal {
        return true;
    }

    let mut visited: BTreeSet<Vec<u32>> = BTreeSet::new();
    visited.insert(encode(&start));
    let mut queue: VecDeque<Vec<GridPos>> = VecDeque::new();
    queue.push_back(start);

    while let Some(state) = queue.pop_front() {
        for mover in 0..state.len() {
            for next in neighbor_cells(state[mover]) {
                if blocked(next) {
                    continue;
                }
                if state.iter().enumerate().any(|(i, &c)| i != mover && c == next) {
                    continue;
                }
                let mut new_state = state.clone();
                new_state[mover] = next;
                if new_state == goal {
                    return true;
                }
                let key = encode(&new_state);
                if visited.insert(key) {
                    queue.push_back(new_state);
                }
            }
        }
    }
    false
}

fn neighbor_cells(pos: GridPos) -> impl Iterator<Item = GridPos> {
    [
        Some(GridPos::new(pos.col + 1, pos.row)),
        Some(GridPos::new(pos.col, pos.row + 1)),
        pos.row.checked_sub(1).map(|r| GridPos::new(pos.col, r)),
        pos.col.checked_sub(1).map(|c| GridPos::new(c, pos.row)),
    ]
    .into_iter()
    .flatten()
}

/// Finds a solution sequence of dimension at most `max_dim`, with the
/// default caps.
pub fn optimal_decoupling(
    instance: &Instance,
    max_dim: usize,
) -> Result<Option<SolutionSequence>, DecouplingError> {
    optimal_decoupling_capped(
        instance,
        max_dim,
        DEFAULT_SOLVER_CAP,
        DEFAULT_DECOUPLING_ROBOT_CAP,
        DEFAULT_GROUP_CAP,
    )
}

/// Dimension 1 delegates to the monotone solver and converts its plan into
/// singleton groups. Dimension 2 and above searches ordered partitions
/// exhaustively, in canonical order (next group chosen in lexicographic
/// order of its sorted member list), memoizing finished-robot sets that
/// admit no completion.
pub fn optimal_decoupling_capped(
    instance: &Instance,
    max_dim: usize,
    solver_cap: usize,
    robot_cap: usize,
    group_cap: usize,
) -> Result<Option<SolutionSequence>, DecouplingError> {
    let n = instance.robot_count();
    if max_dim == 0 {
        return Ok(if n == 0 {
            Some(SolutionSequence { groups: Vec::new() })
        } else {
            None
        });
    }
    if max_dim == 1 {
        let (plan, _) = solve_monotone_capped(instance, solver_cap)?;
        return Ok(plan.map(|plan| {
            let order: Vec<RobotId> = plan.moves().iter().map(|(id, _)| *id).collect();
            SolutionSequence::singletons(order, n).expect("plan moves every robot once")
        }));
    }

    let max_dim = max_dim.min(n.max(1));
    if n > robot_cap {
        return Err(DecouplingError::TooManyRobots {
            robots: n,
            cap: robot_cap,
        });
    }
    if max_dim > group_cap {
        return Err(DecouplingError::DimensionAboveGroupCap {
            max_dim,
            cap: group_cap,
        });
    }
    if n == 0 {
        return Ok(Some(SolutionSequence { groups: Vec::new() }));
    }

    let full: u32 = (1u32 << n) - 1;
    let mut dead: BTreeSet<u32> = BTreeSet::new();
    let mut groups: Vec<Vec<RobotId>> = Vec::new();

    fn descend(
        instance: &Instance,
        finished: u32,
        full: u32,
        max_dim: usize,
        groups: &mut Vec<Vec<RobotId>>,
        dead: &mut BTreeSet<u32>,
    ) -> bool {
        if finished == full {
            return true;
        }
        if dead.contains(&finished) {
            return false;
        }
        let n = instance.robot_count();
        let remaining: Vec<usize> = (0..n).filter(|i| finished & (1 << i) == 0).collect();

        // Candidate next groups in lexicographic order of their sorted
        // member lists: extend-by-larger-id depth first, testing each set as
        // soon as it is formed.
        fn try_groups(
            instance: &Instance,
            finished: u32,
            full: u32,
            max_dim: usize,
            remaining: &[usize],
            from: usize,
            current: &mut Vec<usize>,
            groups: &mut Vec<Vec<RobotId>>,
            dead: &mut BTreeSet<u32>,
        ) -> bool {
            for pick in from..remaining.len() {
                current.push(remaining[pick]);
                let group_mask: u32 = current.iter().map(|&i| 1u32 << i).sum();
                let robots = instance.robots();
                let mut static_cells: BTreeSet<GridPos> = BTreeSet::new();
                for i in 0..instance.robot_count() {
                    let bit = 1u32 << i;
                    if group_mask & bit != 0 {
                        continue;
                    }
                    if finished & bit != 0 {
                        static_cells.insert(robots[i].target);
                    } else {
                        static_cells.insert(robots[i].start);
                    }
                }
                let members: Vec<(GridPos, GridPos)> = current
                    .iter()
                    .map(|&i| (robots[i].start, robots[i].target))
                    .collect();
                if group_feasible(instance.workspace(), &static_cells, &members) {
                    groups.push(current.iter().map(|&i| RobotId(i as u32)).collect());
                    if descend(instance, finished | group_mask, full, max_dim, groups, dead) {
                        return true;
                    }
                    groups.pop();
                }
                if current.len() < max_dim
                    && try_groups(
                        instance,
                        finished,
                        full,
                        max_dim,
                        remaining,
                        pick + 1,
                        current,
                        groups,
                        dead,
                    )
                {
                    return true;
                }
                current.pop();
            }
            false
        }

        let mut current = Vec::new();
        if try_groups(
            instance,
            finished,
            full,
            max_dim,
            &remaining,
            0,
            &mut current,
            groups,
            dead,
        ) {
            return true;
        }
        dead.insert(finished);
        false
    }

    if descend(instance, 0, full, max_dim, &mut groups, &mut dead) {
        let sequence = SolutionSequence::new(groups, n).expect("search emits a partition");
        Ok(Some(sequence))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Robot, RobotRole, Workspace};
    use crate::planning::solve_monotone;
    use crate::reduction::build_instance;
    use crate::sat::example_formula;
    use alloc::vec;

    fn swap_2x2() -> Instance {
        let ws = Workspace::new(2, 2, []).unwrap();
        let robots = vec![
            Robot {
                id: RobotId(0),
                label: "r0".into(),
                role: RobotRole::Literal,
                start: GridPos::new(0, 0),
                target: GridPos::new(1, 1),
            },
            Robot {
                id: RobotId(1),
                label: "r1".into(),
                role: RobotRole::Literal,
                start: GridPos::new(1, 1),
                target: GridPos::new(0, 0),
            },
        ];
        Instance::new(ws, robots).unwrap()
    }

    #[test]
    fn dimension_is_the_largest_group() {
        let seq = SolutionSequence::new(
            vec![
                vec![RobotId(0), RobotId(1)],
                vec![RobotId(2)],
                vec![RobotId(3), RobotId(4), RobotId(5)],
            ],
            6,
        )
        .unwrap();
        assert_eq!(seq.dimension(), 3);
        let singles = SolutionSequence::singletons((0..4).map(RobotId), 4).unwrap();
        assert_eq!(singles.dimension(), 1);
        let one = SolutionSequence::new(vec![(0..4).map(RobotId).collect()], 4).unwrap();
        assert_eq!(one.dimension(), 4);
    }

    #[test]
    fn partition_invariants_are_enforced() {
        assert!(matches!(
            SolutionSequence::new(vec![vec![]], 1),
            Err(PartitionError::EmptyGroup { index: 0 })
        ));
        assert!(matches!(
            SolutionSequence::new(vec![vec![RobotId(0)], vec![RobotId(0)]], 1),
            Err(PartitionError::OverlappingRobot { .. })
        ));
        assert!(matches!(
            SolutionSequence::new(vec![vec![RobotId(0)]], 2),
            Err(PartitionError::MissingRobot { .. })
        ));
        assert!(matches!(
            SolutionSequence::new(vec![vec![RobotId(7)]], 2),
            Err(PartitionError::UnknownRobot { .. })
        ));
    }

    #[test]
    fn monotone_plan_order_validates_as_singletons() {
        let (instance, _) = build_instance(&example_formula());
        let plan = solve_monotone(&instance).unwrap().expect("feasible");
        let order: Vec<RobotId> = plan.moves().iter().map(|(id, _)| *id).collect();
        let seq = SolutionSequence::singletons(order, instance.robot_count()).unwrap();
        assert_eq!(
            validate_solution_sequence(&instance, &seq).unwrap(),
            SequenceCheck::Valid
        );
    }

    #[test]
    fn corridor_swap_fails_in_every_partition() {
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
        let partitions = [
            vec![vec![RobotId(0)], vec![RobotId(1)]],
            vec![vec![RobotId(1)], vec![RobotId(0)]],
            vec![vec![RobotId(0), RobotId(1)]],
        ];
        for groups in partitions {
            let seq = SolutionSequence::new(groups, 2).unwrap();
            assert!(matches!(
                validate_solution_sequence(&instance, &seq).unwrap(),
                SequenceCheck::FailingGroup(0)
            ));
        }
        assert_eq!(optimal_decoupling(&instance, 2).unwrap(), None);
    }

    #[test]
    fn diagonal_swap_needs_dimension_two() {
        let instance = swap_2x2();
        // Singleton partitions fail: either robot's path is blocked by the
        // other one standing on its start.
        for order in [[0u32, 1], [1, 0]] {
            let seq =
                SolutionSequence::singletons(order.iter().map(|&i| RobotId(i)), 2).unwrap();
            assert!(matches!(
                validate_solution_sequence(&instance, &seq).unwrap(),
                SequenceCheck::FailingGroup(0)
            ));
        }
        assert_eq!(optimal_decoupling(&instance, 1).unwrap(), None);

        let seq = optimal_decoupling(&instance, 2).unwrap().expect("rotation works");
        assert_eq!(seq.groups(), &[vec![RobotId(0), RobotId(1)]]);
        assert_eq!(seq.dimension(), 2);
        assert_eq!(
            validate_solution_sequence(&instance, &seq).unwrap(),
            SequenceCheck::Valid
        );
    }

    #[test]
    fn single_robot_decouples_as_singleton() {
        let ws = Workspace::new(2, 1, []).unwrap();
        let robots = vec![Robot {
            id: RobotId(0),
            label: "r0".into(),
            role: RobotRole::Literal,
            start: GridPos::new(0, 0),
            target: GridPos::new(1, 0),
        }];
        let instance = Instance::new(ws, robots).unwrap();
        let seq = optimal_decoupling(&instance, 1).unwrap().expect("feasible");
        assert_eq!(seq.groups(), &[vec![RobotId(0)]]);
    }

    #[test]
    fn capacity_errors() {
        let instance = swap_2x2();
        assert!(matches!(
            optimal_decoupling_capped(&instance, 2, 24, 1, 3),
            Err(DecouplingError::TooManyRobots { .. })
        ));
        assert!(matches!(
            optimal_decoupling_capped(&instance, 2, 24, 8, 1),
            Err(DecouplingError::DimensionAboveGroupCap { .. })
        ));
        let seq = SolutionSequence::new(vec![vec![RobotId(0), RobotId(1)]], 2).unwrap();
        assert!(matches!(
            validate_solution_sequence_capped(&instance, &seq, 1),
            Err(DecouplingError::GroupTooLarge { .. })
        ));
    }
}
