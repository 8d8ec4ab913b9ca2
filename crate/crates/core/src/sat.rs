//! CNF formulas, a DPLL solver and an exhaustive oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A DIMACS-style literal: `+v` or `-v` for variable `v >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn pos(var: u32) -> Lit {
        assert!(var >= 1 && var <= i32::MAX as u32, "variable out of range");
        Lit(var as i32)
    }

    pub fn neg(var: u32) -> Lit {
        Lit(-Lit::pos(var).0)
    }

    /// From a non-zero DIMACS integer.
    pub fn from_dimacs(value: i32) -> Option<Lit> {
        (value != 0 && value != i32::MIN).then_some(Lit(value))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn negate(self) -> Lit {
        Lit(-self.0)
    }
}

impl core::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        self.negate()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A total assignment over variables `1..=var_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn all_false(var_count: usize) -> Self {
        Assignment {
            values: vec![false; var_count],
        }
    }

    pub fn from_values(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn var_count(&self) -> usize {
        self.values.len()
    }

    /// Value of variable `var` (1-based). Unknown variables read as false.
    pub fn get(&self, var: u32) -> bool {
        self.values
            .get((var as usize).wrapping_sub(1))
            .copied()
            .unwrap_or(false)
    }

    pub fn set(&mut self, var: u32, value: bool) {
        let idx = var as usize - 1;
        if idx >= self.values.len() {
            self.values.resize(idx + 1, false);
        }
        self.values[idx] = value;
    }

    pub fn satisfies(&self, lit: Lit) -> bool {
        self.get(lit.var()) == lit.is_positive()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Model as DIMACS literals, one per variable.
    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| {
            let var = i as u32 + 1;
            if v {
                Lit::pos(var)
            } else {
                Lit::neg(var)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatError {
    LiteralOutOfRange { clause: usize, literal: i32 },
    TooManyVariables { var_count: usize, limit: usize },
}

impl fmt::Display for SatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatError::LiteralOutOfRange { clause, literal } => {
                write!(f, "literal {literal} in clause {clause} is out of range")
            }
            SatError::TooManyVariables { var_count, limit } => write!(
                f,
                "brute force refuses {var_count} variables (limit {limit})"
            ),
        }
    }
}

impl core::error::Error for SatError {}

/// Plain CNF over variables `1..=var_count`. An empty clause makes the
/// formula unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Vec<Lit>>) -> Result<Self, SatError> {
        for (i, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var() as usize > var_count) {
                return Err(SatError::LiteralOutOfRange {
                    clause: i,
                    literal: l.to_dimacs(),
                });
            }
        }
        Ok(CnfFormula { var_count, clauses })
    }

    /// Builds from DIMACS integers; each inner vector is one clause without
    /// the terminating zero.
    pub fn from_ints(var_count: usize, clauses: &[&[i32]]) -> Result<Self, SatError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            let mut lits = Vec::with_capacity(c.len());
            for &v in c.iter() {
                lits.push(Lit::from_dimacs(v).ok_or(SatError::LiteralOutOfRange {
                    clause: i,
                    literal: v,
                })?);
            }
            out.push(lits);
        }
        CnfFormula::new(var_count, out)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| assignment.satisfies(l)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SolveResult {
    Sat(Assignment),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SolveResult::Sat(a) => Some(a),
            SolveResult::Unsat => None,
        }
    }
}

/// Largest variable count [`solve_bruteforce`] accepts.
pub const BRUTEFORCE_LIMIT: usize = 24;

/// Tries all `2^n` assignments, counting upward with variable 1 as the most
/// significant bit, and returns the first model.
pub fn solve_bruteforce(formula: &CnfFormula) -> Result<SolveResult, SatError> {
    let n = formula.var_count;
    if n > BRUTEFORCE_LIMIT {
        return Err(SatError::TooManyVariables {
            var_count: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let value = |bits: u32, var: u32| bits >> (n - var as usize) & 1 == 1;
    for bits in 0u32..(1u32 << n) {
        let satisfied = formula
            .clauses
            .iter()
            .all(|c| c.iter().any(|l| value(bits, l.var()) == l.is_positive()));
        if satisfied {
            let values = (1..=n as u32).map(|v| value(bits, v)).collect();
            return Ok(SolveResult::Sat(Assignment { values }));
        }
    }
    Ok(SolveResult::Unsat)
}

/// DPLL with unit propagation and chronological backtracking.
///
/// Branching always picks the lowest-index unassigned variable and tries
/// `true` first, so the result is a function of the input alone. Variables
/// the search never needs to touch are reported false. Every model is checked
/// against the formula before it is returned.
pub fn solve_dpll(formula: &CnfFormula) -> SolveResult {
    let result = Dpll::new(formula).run();
    if let SolveResult::Sat(model) = &result {
        assert!(
            formula.is_satisfied_by(model),
            "DPLL produced an assignment that violates the formula"
        );
    }
    result
}

const UNASSIGNED: i8 = 0;

struct Decision {
    trail_len: usize,
    var: u32,
    flipped: bool,
}

struct Dpll<'a> {
    clauses: &'a [Vec<Lit>],
    /// clause indices per literal; index `2v` for `+v`, `2v+1` for `-v`
    occurs: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<Lit>,
    decisions: Vec<Decision>,
}

fn lit_index(l: Lit) -> usize {
    2 * l.var() as usize + usize::from(!l.is_positive())
}

impl<'a> Dpll<'a> {
    fn new(formula: &'a CnfFormula) -> Self {
        let n = formula.var_count;
        let mut occurs = vec![Vec::new(); 2 * n + 2];
        for (i, clause) in formula.clauses.iter().enumerate() {
            for &l in clause {
                occurs[lit_index(l)].push(i);
            }
        }
        Dpll {
            clauses: &formula.clauses,
            occurs,
            values: vec![UNASSIGNED; n + 1],
            trail: Vec::new(),
            decisions: Vec::new(),
        }
    }

    fn value(&self, l: Lit) -> i8 {
        let v = self.values[l.var() as usize];
        if l.is_positive() {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: Lit) {
        self.values[l.var() as usize] = if l.is_positive() { 1 } else { -1 };
        self.trail.push(l);
    }

    /// Propagates from trail position `from`; returns false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let falsified = self.trail[from].negate();
            from += 1;
            for k in 0..self.occurs[lit_index(falsified)].len() {
                let ci = self.occurs[lit_index(falsified)][k];
                let mut unit = None;
                let mut open = 0;
                let mut satisfied = false;
                for &l in &self.clauses[ci] {
                    match self.value(l) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        UNASSIGNED => {
                            open += 1;
                            unit = Some(l);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => self.assign(unit.expect("one open literal")),
                    _ => {}
                }
            }
        }
        true
    }

    fn backtrack_to(&mut self, trail_len: usize) {
        for l in self.trail.drain(trail_len..) {
            self.values[l.var() as usize] = UNASSIGNED;
        }
    }

    fn run(mut self) -> SolveResult {
        if self.clauses.iter().any(|c| c.is_empty()) {
            return SolveResult::Unsat;
        }
        for ci in 0..self.clauses.len() {
            if let [l] = self.clauses[ci][..] {
                match self.value(l) {
                    1 => {}
                    UNASSIGNED => self.assign(l),
                    _ => return SolveResult::Unsat,
                }
            }
        }
        let mut ok = self.propagate(0);
        loop {
            if !ok {
                // undo until a decision can still be flipped
                loop {
                    let Some(d) = self.decisions.pop() else {
                        return SolveResult::Unsat;
                    };
                    self.backtrack_to(d.trail_len);
                    if !d.flipped {
                        self.decisions.push(Decision {
                            trail_len: d.trail_len,
                            var: d.var,
                            flipped: true,
                        });
                        self.assign(Lit::neg(d.var));
                        ok = self.propagate(d.trail_len);
                        break;
                    }
                }
                continue;
            }
            let Some(var) = (1..self.values.len()).find(|&v| self.values[v] == UNASSIGNED) else {
                let values = self.values[1..].iter().map(|&v| v == 1).collect();
                return SolveResult::Sat(Assignment { values });
            };
            let var = var as u32;
            let trail_len = self.trail.len();
            self.decisions.push(Decision {
                trail_len,
                var,
                flipped: false,
            });
            self.assign(Lit::pos(var));
            ok = self.propagate(trail_len);
        }
    }
}
