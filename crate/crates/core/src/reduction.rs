//! Builds a monotone MRMP instance from a 3-CNF formula.
//!
//! The workspace is three rows high. Reading left to right: the verifier's
//! start column, then one assignment gadget per variable, then one clause
//! gadget per clause, then the verifier's target column. Every gadget is
//! preceded by a column of empty cells so robots can enter it at any row.
//!
//! An assignment gadget holds the starts of one variable's literal robots:
//! positive occurrences in the top row, negative in the bottom row, and a
//! middle row made of obstacles. A clause gadget is a single column whose
//! three cells are the targets of the clause's literals in written order.
//! Inside each gadget row, sources are ordered left to right to match the
//! left-to-right order of their targets.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::grid::{GridPos, Instance, Robot, RobotId, RobotRole, Workspace};
use crate::sat::{CnfFormula, Literal};

/// Verifier row: the middle of the three rows.
pub const VERIFIER_ROW: u32 = 1;
pub const TOP_ROW: u32 = 0;
pub const OBSTACLE_ROW: u32 = 1;
pub const BOTTOM_ROW: u32 = 2;

/// Display name of a variable: `a`..`z` for 1..=26, `x<n>` beyond.
pub fn variable_name(var: u32) -> String {
    if (1..=26).contains(&var) {
        char::from(b'a' + (var - 1) as u8).to_string()
    } else {
        alloc::format!("x{var}")
    }
}

/// An occurrence of a literal: clause index and position 0..=2 within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub clause: usize,
    pub position: usize,
}

/// Per-variable gadget geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableGadget {
    pub var: u32,
    pub first_col: u32,
    pub last_col: u32,
    /// Source cells of positive occurrences, left to right.
    pub top_sources: Vec<GridPos>,
    /// Source cells of negative occurrences, left to right.
    pub bottom_sources: Vec<GridPos>,
}

impl VariableGadget {
    pub fn width(&self) -> u32 {
        self.last_col - self.first_col + 1
    }
}

/// Per-clause gadget geometry: one column, three target cells top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseGadget {
    pub column: u32,
    pub targets: [GridPos; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("robot {0} is not part of this layout")]
    UnknownRobot(RobotId),
    #[error("no occurrence at clause {clause} position {position}")]
    UnknownOccurrence { clause: usize, position: usize },
    #[error("variable {0} has no gadget in this layout")]
    UnknownVariable(u32),
}

/// What a robot stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RobotKind {
    Literal(Literal),
    Verifier,
}

/// Bookkeeping that ties literal occurrences to robots and records the
/// gadget geometry of a generated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    formula: CnfFormula,
    variables: Vec<VariableGadget>,
    clauses: Vec<ClauseGadget>,
    occurrence_robot: Vec<[RobotId; 3]>,
    robot_occurrence: Vec<Option<Occurrence>>,
    verifier: RobotId,
    empty_cols: Vec<u32>,
}

impl ReductionLayout {
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    /// Gadgets in left-to-right (variable first-occurrence) order.
    pub fn variables(&self) -> &[VariableGadget] {
        &self.variables
    }

    pub fn variable_gadget(&self, var: u32) -> Result<&VariableGadget, LayoutError> {
        self.variables
            .iter()
            .find(|g| g.var == var)
            .ok_or(LayoutError::UnknownVariable(var))
    }

    /// Clause gadgets in input order.
    pub fn clause_gadgets(&self) -> &[ClauseGadget] {
        &self.clauses
    }

    pub fn verifier(&self) -> RobotId {
        self.verifier
    }

    /// The empty approach columns, one per gadget, ascending.
    pub fn empty_cols(&self) -> &[u32] {
        &self.empty_cols
    }

    /// The literal a robot stands for, or `Verifier`.
    pub fn literal_of_robot(&self, id: RobotId) -> Result<RobotKind, LayoutError> {
        if id == self.verifier {
            return Ok(RobotKind::Verifier);
        }
        match self.robot_occurrence.get(id.index()) {
            Some(Some(occ)) => Ok(RobotKind::Literal(
                self.formula.clauses()[occ.clause][occ.position],
            )),
            _ => Err(LayoutError::UnknownRobot(id)),
        }
    }

    /// The occurrence a literal robot realizes; `None` for the verifier.
    pub fn occurrence_of_robot(&self, id: RobotId) -> Result<Option<Occurrence>, LayoutError> {
        self.robot_occurrence
            .get(id.index())
            .copied()
            .ok_or(LayoutError::UnknownRobot(id))
    }

    /// The robot realizing a clause's literal at a written position.
    pub fn robot_of_occurrence(
        &self,
        clause: usize,
        position: usize,
    ) -> Result<RobotId, LayoutError> {
        if position >= 3 || clause >= self.occurrence_robot.len() {
            return Err(LayoutError::UnknownOccurrence { clause, position });
        }
        Ok(self.occurrence_robot[clause][position])
    }
}

/// Deterministically constructs the monotone MRMP instance for a formula,
/// together with its layout. Robot count is `3 * clauses + 1` and the width
/// is `2 + sum over occurring variables of (1 + max(pos, neg)) + 2 * clauses`.
pub fn build_instance(formula: &CnfFormula) -> (Instance, ReductionLayout) {
    let clauses = formula.clauses();

    // Variables in first-occurrence order; variables that never occur get no
    // gadget.
    let mut var_order: Vec<u32> = Vec::new();
    for clause in clauses {
        for lit in clause {
            if !var_order.contains(&lit.var) {
                var_order.push(lit.var);
            }
        }
    }

    // Column plan: verifier start column, then per variable an empty column
    // and a gadget, then per clause an empty column and a one-column gadget,
    // then the verifier target column.
    let mut empty_cols: Vec<u32> = Vec::new();
    let mut cursor: u32 = 1;

    let mut spans: Vec<(u32, u32, u32)> = Vec::new(); // (var, first_col, last_col)
    for &var in &var_order {
        let positives = occurrences_of(formula, var, true).len() as u32;
        let negatives = occurrences_of(formula, var, false).len() as u32;
        let width = positives.max(negatives).max(1);
        empty_cols.push(cursor);
        spans.push((var, cursor + 1, cursor + width));
        cursor += 1 + width;
    }

    let mut clause_gadgets: Vec<ClauseGadget> = Vec::new();
    for _ in clauses {
        empty_cols.push(cursor);
        let column = cursor + 1;
        clause_gadgets.push(ClauseGadget {
            column,
            targets: [
                GridPos::new(column, TOP_ROW),
                GridPos::new(column, OBSTACLE_ROW),
                GridPos::new(column, BOTTOM_ROW),
            ],
        });
        cursor += 2;
    }

    let width = cursor + 1;
    let height = 3;

    let mut obstacles: Vec<GridPos> = Vec::new();
    for &(_, first, last) in &spans {
        for col in first..=last {
            obstacles.push(GridPos::new(col, OBSTACLE_ROW));
        }
    }

    // Assign sources and create robots: per variable, top row then bottom
    // row, sources left to right; the verifier comes last.
    let mut robots: Vec<Robot> = Vec::new();
    let mut variables: Vec<VariableGadget> = Vec::new();
    let mut occurrence_robot: Vec<[RobotId; 3]> =
        alloc::vec![[RobotId(u32::MAX); 3]; clauses.len()];
    let mut robot_occurrence: Vec<Option<Occurrence>> = Vec::new();

    for &(var, first_col, last_col) in &spans {
        let mut gadget = VariableGadget {
            var,
            first_col,
            last_col,
            top_sources: Vec::new(),
            bottom_sources: Vec::new(),
        };
        for (positive, row) in [(true, TOP_ROW), (false, BOTTOM_ROW)] {
            // Occurrences sorted by target column (ties by target row, top
            // first) so that source order matches target order.
            let mut occs = occurrences_of(formula, var, positive);
            occs.sort_by_key(|occ| {
                let target = clause_gadgets[occ.clause].targets[occ.position];
                (target.col, target.row)
            });
            for (slot, occ) in occs.iter().enumerate() {
                let start = GridPos::new(first_col + slot as u32, row);
                let target = clause_gadgets[occ.clause].targets[occ.position];
                let id = RobotId(robots.len() as u32);
                let name = variable_name(var);
                let label = if positive {
                    alloc::format!("{name}{}", slot + 1)
                } else {
                    alloc::format!("\u{ac}{name}{}", slot + 1)
                };
                robots.push(Robot {
                    id,
                    label,
                    role: RobotRole::Literal,
                    start,
                    target,
                });
                robot_occurrence.push(Some(*occ));
                occurrence_robot[occ.clause][occ.position] = id;
                if positive {
                    gadget.top_sources.push(start);
                } else {
                    gadget.bottom_sources.push(start);
                }
            }
        }
        variables.push(gadget);
    }

    let verifier_id = RobotId(robots.len() as u32);
    robots.push(Robot {
        id: verifier_id,
        label: "r*".to_string(),
        role: RobotRole::Verifier,
        start: GridPos::new(0, VERIFIER_ROW),
        target: GridPos::new(width - 1, VERIFIER_ROW),
    });
    robot_occurrence.push(None);

    let workspace =
        Workspace::new(width, height, obstacles).expect("generated obstacles are in bounds");
    let instance = Instance::new(workspace, robots).expect("generated instance is well-formed");

    let layout = ReductionLayout {
        formula: formula.clone(),
        variables,
        clauses: clause_gadgets,
        occurrence_robot,
        robot_occurrence,
        verifier: verifier_id,
        empty_cols,
    };
    (instance, layout)
}

fn occurrences_of(formula: &CnfFormula, var: u32, positive: bool) -> Vec<Occurrence> {
    let mut out = Vec::new();
    for (clause, lits) in formula.clauses().iter().enumerate() {
        for (position, lit) in lits.iter().enumerate() {
            if lit.var == var && lit.positive == positive {
                out.push(Occurrence { clause, position });
            }
        }
    }
    out
}
