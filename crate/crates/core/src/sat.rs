//! 3-CNF formulas: DIMACS parsing and serialization, evaluation, and a
//! brute-force satisfiability oracle.
//!
//! Clauses carry exactly three literals. Duplicate and complementary
//! literals inside a clause are allowed.

use alloc::string::String;
use alloc::vec::Vec;

use core::fmt;

use thiserror::Error;

/// A literal: a variable (1-based) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub const fn positive(var: u32) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub const fn negative(var: u32) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    /// DIMACS encoding: the signed variable index.
    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

/// A clause of exactly three literals, in written order.
pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause {clause} literal {position} references variable {var}, but the formula has {num_vars} variables")]
    VarOutOfRange {
        clause: usize,
        position: usize,
        var: u32,
        num_vars: u32,
    },
    #[error("clause {clause} literal {position} references variable 0; variables are 1-based")]
    ZeroVar { clause: usize, position: usize },
}

/// A 3-CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (ci, clause) in clauses.iter().enumerate() {
            for (pi, lit) in clause.iter().enumerate() {
                if lit.var == 0 {
                    return Err(FormulaError::ZeroVar {
                        clause: ci,
                        position: pi,
                    });
                }
                if lit.var > num_vars {
                    return Err(FormulaError::VarOutOfRange {
                        clause: ci,
                        position: pi,
                        var: lit.var,
                        num_vars,
                    });
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Number of literal occurrences (3 per clause).
    pub fn literal_count(&self) -> usize {
        self.clauses.len() * 3
    }
}

/// A total truth assignment for variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn all_false(num_vars: u32) -> Self {
        Self {
            values: alloc::vec![false; num_vars as usize],
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    /// Value of a 1-based variable.
    pub fn value(&self, var: u32) -> Option<bool> {
        self.values.get(var as usize - 1).copied()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn satisfies_literal(&self, lit: Literal) -> Option<bool> {
        self.value(lit.var).map(|v| v == lit.positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("assignment covers {assigned} variables but the formula has {required}")]
pub struct PartialAssignment {
    pub assigned: u32,
    pub required: u32,
}

/// True iff every clause contains a literal satisfied by `assignment`.
pub fn evaluate(formula: &CnfFormula, assignment: &Assignment) -> Result<bool, PartialAssignment> {
    if assignment.num_vars() != formula.num_vars() {
        return Err(PartialAssignment {
            assigned: assignment.num_vars(),
            required: formula.num_vars(),
        });
    }
    Ok(formula.clauses().iter().all(|clause| {
        clause
            .iter()
            .any(|&lit| assignment.satisfies_literal(lit) == Some(true))
    }))
}

/// Variable-count guard for [`brute_force_sat`].
pub const BRUTE_FORCE_VAR_CAP: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("brute-force search over {num_vars} variables exceeds the cap of {cap}")]
pub struct SatCapacityError {
    pub num_vars: u32,
    pub cap: u32,
}

/// Exhaustive satisfiability check. Returns the lexicographically first
/// satisfying assignment (variables in index order, false before true), or
/// `None` when the formula is unsatisfiable.
pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Assignment>, SatCapacityError> {
    let n = formula.num_vars();
    if n > BRUTE_FORCE_VAR_CAP {
        return Err(SatCapacityError {
            num_vars: n,
            cap: BRUTE_FORCE_VAR_CAP,
        });
    }
    for mask in 0u64..(1u64 << n) {
        // Variable 1 is the most significant position so that ascending
        // masks enumerate assignments in lexicographic order.
        let values: Vec<bool> = (0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect();
        let assignment = Assignment::new(values);
        if evaluate(formula, &assignment).expect("assignment is total by construction") {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedHeader,
    MissingHeader,
    DuplicateHeader,
    NonIntegerToken,
    VarOutOfRange,
    ClauseArity,
    ClauseCountMismatch,
    UnterminatedClause,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::MalformedHeader => "malformed header",
            ParseErrorKind::MissingHeader => "missing `p cnf` header",
            ParseErrorKind::DuplicateHeader => "duplicate `p cnf` header",
            ParseErrorKind::NonIntegerToken => "non-integer token",
            ParseErrorKind::VarOutOfRange => "variable out of range",
            ParseErrorKind::ClauseArity => "clause does not have exactly 3 literals",
            ParseErrorKind::ClauseCountMismatch => "clause count does not match the header",
            ParseErrorKind::UnterminatedClause => "clause is missing its terminating 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}: {detail}")]
pub struct ParseError {
    /// 1-based line number of the offending token or line.
    pub line: usize,
    pub kind: ParseErrorKind,
    pub detail: String,
}

impl ParseError {
    fn new(line: usize, kind: ParseErrorKind, detail: impl Into<String>) -> Self {
        Self {
            line,
            kind,
            detail: detail.into(),
        }
    }
}

/// Parses standard DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>`
/// header, then clauses as signed integers terminated by 0. Clauses may span
/// lines. Every clause must contain exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(u32, usize, usize)> = None; // (vars, clauses, line)
    let mut clauses: Vec<Clause> = Vec::new();
    let mut pending: Vec<(Literal, usize)> = Vec::new();
    let mut last_token_line = 1;

    for (line_idx, raw_line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(
                    line_no,
                    ParseErrorKind::DuplicateHeader,
                    line,
                ));
            }
            let mut tokens = line.split_whitespace();
            let _p = tokens.next();
            let format = tokens.next();
            let vars = tokens.next().and_then(|t| t.parse::<u32>().ok());
            let count = tokens.next().and_then(|t| t.parse::<usize>().ok());
            match (format, vars, count, tokens.next()) {
                (Some("cnf"), Some(vars), Some(count), None) => {
                    header = Some((vars, count, line_no));
                }
                _ => {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::MalformedHeader,
                        line,
                    ));
                }
            }
            continue;
        }
        let Some((num_vars, _, _)) = header else {
            return Err(ParseError::new(
                line_no,
                ParseErrorKind::MissingHeader,
                "clause data before the `p cnf` header",
            ));
        };
        for token in line.split_whitespace() {
            last_token_line = line_no;
            let value: i64 = token.parse().map_err(|_| {
                ParseError::new(line_no, ParseErrorKind::NonIntegerToken, token)
            })?;
            if value == 0 {
                if pending.len() != 3 {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::ClauseArity,
                        alloc::format!("found {} literals", pending.len()),
                    ));
                }
                clauses.push([pending[0].0, pending[1].0, pending[2].0]);
                pending.clear();
            } else {
                let var = value.unsigned_abs();
                if var > num_vars as u64 {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::VarOutOfRange,
                        alloc::format!("variable {var} > {num_vars}"),
                    ));
                }
                if pending.len() == 3 {
                    // A fourth literal before the 0 terminator.
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::ClauseArity,
                        "found more than 3 literals",
                    ));
                }
                pending.push((
                    Literal {
                        var: var as u32,
                        positive: value > 0,
                    },
                    line_no,
                ));
            }
        }
    }

    let Some((num_vars, declared, header_line)) = header else {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MissingHeader,
            "input has no `p cnf` header",
        ));
    };
    if let Some(&(_, line)) = pending.first() {
        return Err(ParseError::new(
            line,
            ParseErrorKind::UnterminatedClause,
            alloc::format!("{} literals without a terminating 0", pending.len()),
        ));
    }
    if clauses.len() != declared {
        return Err(ParseError::new(
            if clauses.len() > declared {
                last_token_line
            } else {
                header_line
            },
            ParseErrorKind::ClauseCountMismatch,
            alloc::format!("header declares {declared}, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(num_vars, clauses).map_err(|e| {
        ParseError::new(header_line, ParseErrorKind::VarOutOfRange, alloc::format!("{e}"))
    })
}

/// Canonical DIMACS serialization: one comment line, the header, one clause
/// per line.
pub fn serialize_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str("c monomap cnf\n");
    out.push_str(&alloc::format!(
        "p cnf {} {}\n",
        formula.num_vars(),
        formula.clause_count()
    ));
    for clause in formula.clauses() {
        out.push_str(&alloc::format!(
            "{} {} {} 0\n",
            clause[0].to_dimacs(),
            clause[1].to_dimacs(),
            clause[2].to_dimacs()
        ));
    }
    out
}

/// The running example formula: (~a | ~b | c) & (a | ~b | c) & (a | b | ~c).
pub fn example_formula() -> CnfFormula {
    parse_dimacs("p cnf 3 3\n-1 -2 3 0\n1 -2 3 0\n1 2 -3 0").expect("example formula parses")
}

/// All eight polarity patterns over three variables; unsatisfiable because
/// every assignment falsifies its complementary clause.
pub fn complete_formula_three_vars() -> CnfFormula {
    let clauses: Vec<Clause> = (0u32..8)
        .map(|pattern| {
            [0, 1, 2].map(|bit| Literal {
                var: bit + 1,
                positive: (pattern >> bit) & 1 == 0,
            })
        })
        .collect();
    CnfFormula::new(3, clauses).expect("complete formula is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn assignment(bits: &[bool]) -> Assignment {
        Assignment::new(bits.to_vec())
    }

    #[test]
    fn parses_smallest_legal_input() {
        let f = parse_dimacs("p cnf 1 1\n1 1 1 0").unwrap();
        assert_eq!(f.num_vars(), 1);
        assert_eq!(f.clauses(), &[[Literal::positive(1); 3]]);
    }

    #[test]
    fn parses_example_formula() {
        let f = example_formula();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(
            f.clauses()[0],
            [
                Literal::negative(1),
                Literal::negative(2),
                Literal::positive(3)
            ]
        );
        assert_eq!(
            f.clauses()[2],
            [
                Literal::positive(1),
                Literal::positive(2),
                Literal::negative(3)
            ]
        );
    }

    #[test]
    fn rejects_wrong_arity() {
        let err = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ClauseArity);
        assert_eq!(err.line, 2);
        let err = parse_dimacs("p cnf 4 1\n1 2 3 4 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ClauseArity);
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(
            parse_dimacs("p cnf x 1\n1 1 1 0").unwrap_err().kind,
            ParseErrorKind::MalformedHeader
        );
        assert_eq!(
            parse_dimacs("1 1 1 0").unwrap_err().kind,
            ParseErrorKind::MissingHeader
        );
        let err = parse_dimacs("p cnf 1 1\n1 one 1 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonIntegerToken);
        assert_eq!(err.line, 2);
        let err = parse_dimacs("p cnf 1 1\n1 2 1 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::VarOutOfRange);
        let err = parse_dimacs("p cnf 1 2\n1 1 1 0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ClauseCountMismatch);
        let err = parse_dimacs("p cnf 1 1\n1 1 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnterminatedClause);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs("c comment\np cnf 2 2\n1 -2\n1 0 2 2 2 0").unwrap();
        assert_eq!(f.clause_count(), 2);
    }

    #[test]
    fn evaluate_example_formula() {
        let f = example_formula();
        assert_eq!(evaluate(&f, &assignment(&[true, false, true])), Ok(true));
        assert_eq!(evaluate(&f, &assignment(&[false, true, false])), Ok(false));
        assert!(evaluate(&f, &assignment(&[true, false])).is_err());
    }

    #[test]
    fn evaluate_unit_like_clause() {
        let f = parse_dimacs("p cnf 1 1\n1 1 1 0").unwrap();
        assert_eq!(evaluate(&f, &assignment(&[false])), Ok(false));
        assert_eq!(evaluate(&f, &assignment(&[true])), Ok(true));
    }

    #[test]
    fn complete_formula_falsified_by_every_assignment() {
        let f = complete_formula_three_vars();
        assert_eq!(f.clause_count(), 8);
        for mask in 0u32..8 {
            let a = assignment(&[mask & 1 == 1, mask & 2 == 2, mask & 4 == 4]);
            assert_eq!(evaluate(&f, &a), Ok(false));
        }
    }

    #[test]
    fn brute_force_finds_lexicographically_first_model() {
        let f = example_formula();
        let a = brute_force_sat(&f).unwrap().expect("satisfiable");
        assert_eq!(evaluate(&f, &a), Ok(true));
        // a=F b=F c=F already satisfies all three clauses.
        assert_eq!(a.values(), &[false, false, false]);
        // The assignment from the worked example also satisfies it.
        assert_eq!(evaluate(&f, &assignment(&[true, false, true])), Ok(true));
    }

    #[test]
    fn brute_force_on_empty_clause_list() {
        let f = CnfFormula::new(2, vec![]).unwrap();
        let a = brute_force_sat(&f).unwrap().expect("vacuously satisfiable");
        assert_eq!(a.values(), &[false, false]);
    }

    #[test]
    fn brute_force_detects_unsat() {
        assert_eq!(brute_force_sat(&complete_formula_three_vars()).unwrap(), None);
    }

    #[test]
    fn brute_force_guards_capacity() {
        let f = CnfFormula::new(31, vec![]).unwrap();
        assert!(brute_force_sat(&f).is_err());
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let f = example_formula();
        assert_eq!(parse_dimacs(&serialize_dimacs(&f)).unwrap(), f);
    }
}
