//! 3-SAT to minimum-inefficiency reduction and its brute-force check.

mod reduction;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use reduction::{reduce_3sat, solution_from_assignment, solution_from_choices, ClauseGadget, ReductionInstance};
pub use verify::{satisfying_assignment, verify_reduction, VerificationReport, MAX_VERIFY_CLAUSES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// Zero-based variable index.
    pub variable: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(variable: usize, positive: bool) -> Self {
        Literal { variable, positive }
    }

    /// Truth of the literal under a full assignment.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        assignment[self.variable] == self.positive
    }

    /// DIMACS form: 1-based, negative when negated.
    pub fn to_dimacs(&self) -> i64 {
        let v = self.variable as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("¬")?;
        }
        write!(f, "x{}", self.variable + 1)
    }
}

pub type Clause = [Literal; 3];

/// Conjunction of clauses with exactly three literals over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf3Formula {
    variable_count: usize,
    clauses: Vec<Clause>,
}

impl Cnf3Formula {
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            for (j, lit) in clause.iter().enumerate() {
                if lit.variable >= variable_count {
                    return Err(Error::Invalid(format!(
                        "clause {i} uses variable {} but only {variable_count} are declared",
                        lit.variable + 1
                    )));
                }
                if clause[..j].iter().any(|other| other.variable == lit.variable) {
                    return Err(Error::RepeatedVariable {
                        clause: i,
                        variable: lit.variable + 1,
                    });
                }
            }
        }
        Ok(Cnf3Formula {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(assignment)))
    }

    /// Parses `p cnf <vars> <clauses>` followed by zero-terminated clauses;
    /// `c` lines are comments. Every clause must have exactly 3 literals.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<(Vec<i64>, usize)> = Vec::new();
        let mut pending: Vec<i64> = Vec::new();
        let mut pending_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "expected `p cnf <variables> <clauses>`".into(),
                })?);
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "clause before `p cnf` header".into(),
                });
            }
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{tok}` is not an integer literal"),
                })?;
                if pending.is_empty() {
                    pending_line = line_no;
                }
                if lit == 0 {
                    clauses.push((std::mem::take(&mut pending), pending_line));
                } else {
                    pending.push(lit);
                }
            }
        }
        let (variables, declared) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing `p cnf` header".into(),
        })?;
        if !pending.is_empty() {
            return Err(Error::Parse {
                line: pending_line,
                message: "clause not terminated by 0".into(),
            });
        }
        if clauses.len() != declared {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares {declared} clauses, found {}", clauses.len()),
            });
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (lits, line) in clauses {
            if lits.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: format!("clause has {} literals, expected 3", lits.len()),
                });
            }
            let mut clause = [Literal::new(0, true); 3];
            for (slot, &lit) in clause.iter_mut().zip(&lits) {
                let var = lit.unsigned_abs() as usize;
                if var > variables {
                    return Err(Error::Parse {
                        line,
                        message: format!("variable {var} exceeds declared count {variables}"),
                    });
                }
                *slot = Literal::new(var - 1, lit > 0);
            }
            out.push(clause);
        }
        Cnf3Formula::new(variables, out)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs()));
        }
        s
    }
}
