//! DIMACS CNF reading and writing.
//!
//! Labeled formulas are written with their variable meanings and clause
//! groups as comments ahead of the problem line:
//!
//! ```text
//! c var 1 = Q(0,q0)
//! c clause 1 group G1
//! p cnf 22 37
//! 1 2 3 0
//! ```

use std::fmt::Write;

use thiserror::Error;
use tmlab_core::reduction::{Group, LabeledFormula};
use tmlab_core::sat::{Assignment, CnfFormula, Lit};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {0}: malformed `p cnf <vars> <clauses>` header")]
    MalformedHeader(usize),
    #[error("line {0}: second problem line")]
    DuplicateHeader(usize),
    #[error("line {line}: `{token}` is not a literal")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds the declared {vars} variables")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        vars: usize,
    },
    #[error("last clause is missing its terminating 0")]
    MissingTerminator,
    #[error("header declares {declared} clauses but {found} are present")]
    ClauseCount { declared: usize, found: usize },
}

/// A parsed DIMACS file with its comment lines (without the leading `c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsDocument {
    pub formula: CnfFormula,
    pub comments: Vec<String>,
}

impl DimacsDocument {
    /// Group labels recovered from `c clause <n> group G<k>` comments,
    /// indexed by clause position.
    pub fn clause_groups(&self) -> Vec<Option<Group>> {
        let mut groups = vec![None; self.formula.clauses().len()];
        for c in &self.comments {
            let tokens: Vec<&str> = c.split_whitespace().collect();
            if let ["clause", n, "group", g] = tokens[..] {
                let n: Option<usize> = n.parse().ok();
                let g = g
                    .strip_prefix('G')
                    .and_then(|d| d.parse().ok())
                    .and_then(Group::from_number);
                if let (Some(n), Some(g)) = (n, g) {
                    if let Some(slot) = groups.get_mut(n.wrapping_sub(1)) {
                        *slot = Some(g);
                    }
                }
            }
        }
        groups
    }
}

fn write_clauses<'a>(out: &mut String, clauses: impl Iterator<Item = &'a [Lit]>) {
    for clause in clauses {
        for l in clause {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
}

pub fn cnf_to_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.var_count(), f.clauses().len());
    write_clauses(&mut out, f.clauses().iter().map(|c| c.as_slice()));
    out
}

pub fn to_dimacs(f: &LabeledFormula) -> String {
    let mut out = String::new();
    if let Some(p) = &f.provenance {
        write!(out, "c machine {}", p.machine).unwrap();
        if let Some(input) = &p.input {
            write!(out, " input \"{}\"", super::render_input(input)).unwrap();
        }
        writeln!(out, " bound {}", f.bound()).unwrap();
    }
    for (i, m) in f.meanings.iter().enumerate() {
        writeln!(out, "c var {} = {m}", i + 1).unwrap();
    }
    for (i, c) in f.clauses.iter().enumerate() {
        writeln!(out, "c clause {} group {}", i + 1, c.group).unwrap();
    }
    writeln!(out, "p cnf {} {}", f.var_count(), f.clause_count()).unwrap();
    write_clauses(&mut out, f.clauses.iter().map(|c| c.literals.as_slice()));
    out
}

pub fn from_dimacs(text: &str) -> Result<DimacsDocument, DimacsError> {
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                comments.push(rest.trim_start().to_string());
                continue;
            }
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader(number));
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match tokens[..] {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::MalformedHeader(number))?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(DimacsError::MissingHeader);
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::BadToken {
                line: number,
                token: token.to_string(),
            })?;
            if value == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if value.unsigned_abs() > vars as u64 {
                return Err(DimacsError::LiteralOutOfRange {
                    line: number,
                    literal: value,
                    vars,
                });
            }
            current.push(Lit::from_dimacs(value as i32).expect("non-zero and in range"));
        }
    }
    let (vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    let formula = CnfFormula::new(vars, clauses).expect("literals checked against the header");
    Ok(DimacsDocument { formula, comments })
}

/// Solver output in competition style: `s` line plus one `v` line.
pub fn render_model(model: Option<&Assignment>) -> String {
    match model {
        None => "s UNSATISFIABLE\n".to_string(),
        Some(a) => {
            let mut out = String::from("s SATISFIABLE\nv");
            for l in a.literals() {
                write!(out, " {l}").unwrap();
            }
            out.push_str(" 0\n");
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_for_two_by_two() {
        let f = CnfFormula::from_ints(2, &[&[1, -2], &[2]]).unwrap();
        let text = cnf_to_dimacs(&f);
        assert!(text.starts_with("p cnf 2 2\n"));
        assert_eq!(from_dimacs(&text).unwrap().formula, f);
    }

    #[test]
    fn clause_count_mismatch() {
        assert_eq!(
            from_dimacs("p cnf 2 3\n1 2 0\n-1 0\n"),
            Err(DimacsError::ClauseCount {
                declared: 3,
                found: 2
            })
        );
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(from_dimacs("1 2 0\n"), Err(DimacsError::MissingHeader));
        assert_eq!(from_dimacs(""), Err(DimacsError::MissingHeader));
        assert_eq!(
            from_dimacs("p cnf x 1\n"),
            Err(DimacsError::MalformedHeader(1))
        );
        assert_eq!(
            from_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(DimacsError::LiteralOutOfRange {
                line: 2,
                literal: 3,
                vars: 2
            })
        );
        assert_eq!(
            from_dimacs("p cnf 2 1\n1 2\n"),
            Err(DimacsError::MissingTerminator)
        );
        assert!(matches!(
            from_dimacs("p cnf 2 1\n1 a 0\n"),
            Err(DimacsError::BadToken { line: 2, .. })
        ));
    }

    #[test]
    fn comments_and_split_clauses() {
        let doc = from_dimacs("c hello\np cnf 3 1\n1 2\nc mid\n3 0\n").unwrap();
        assert_eq!(doc.comments, vec!["hello".to_string(), "mid".to_string()]);
        assert_eq!(doc.formula.clauses()[0].len(), 3);
    }

    #[test]
    fn model_rendering() {
        assert_eq!(render_model(None), "s UNSATISFIABLE\n");
        let a = Assignment::from_values(vec![true, false]);
        assert_eq!(render_model(Some(&a)), "s SATISFIABLE\nv 1 -2 0\n");
    }
}
