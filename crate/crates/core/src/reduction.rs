//! Cook–Levin style reduction from a bounded machine run to CNF.
//!
//! Variables live on a grid of times `0..=T` and cells `0..=T`:
//!
//! * `Q(i,k)`: at time `i` the machine is in state `k`
//! * `H(i,j)`: at time `i` the head is on cell `j`
//! * `S(i,j,l)`: at time `i` cell `j` holds symbol `l`
//! * `Tr(i,m)`: the step from `i` to `i+1` uses rule `m` (or `PAD`, which
//!   repeats an accepting configuration)
//!
//! Numbering is `Q`, then `H`, then `S`, then `Tr`, each in lexicographic
//! grid order. Clauses are labeled with the group that emitted them; `G4`
//! pins the time-0 configuration and forms the input part, every other group
//! forms the run part.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::machine::{ComputationHistory, Configuration, Machine, MachineError, State, Symbol};
use crate::sat::{Assignment, CnfFormula, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    /// Exactly one state per time.
    G1,
    /// Exactly one head cell per time.
    G2,
    /// Exactly one symbol per cell per time.
    G3,
    /// The initial configuration.
    G4,
    /// Accept at the final time.
    G5,
    /// Transition selection, rule effects, padding and frame.
    G6,
}

impl Group {
    pub const ALL: [Group; 6] = [
        Group::G1,
        Group::G2,
        Group::G3,
        Group::G4,
        Group::G5,
        Group::G6,
    ];

    pub fn part(self) -> Part {
        if self == Group::G4 {
            Part::Input
        } else {
            Part::Run
        }
    }

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Group> {
        Group::ALL.get((n as usize).wrapping_sub(1)).copied()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Input,
    Run,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrChoice {
    /// Index into the provenance machine's rules.
    Rule(usize),
    Pad,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarMeaning {
    Q {
        time: usize,
        state: State,
    },
    H {
        time: usize,
        cell: usize,
    },
    S {
        time: usize,
        cell: usize,
        symbol: Symbol,
    },
    Tr {
        time: usize,
        choice: TrChoice,
    },
}

impl fmt::Display for VarMeaning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarMeaning::Q { time, state } => write!(f, "Q({time},{state})"),
            VarMeaning::H { time, cell } => write!(f, "H({time},{cell})"),
            VarMeaning::S { time, cell, symbol } => write!(f, "S({time},{cell},{symbol})"),
            VarMeaning::Tr {
                time,
                choice: TrChoice::Rule(m),
            } => write!(f, "Tr({time},{m})"),
            VarMeaning::Tr {
                time,
                choice: TrChoice::Pad,
            } => write!(f, "Tr({time},PAD)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub literals: Vec<Lit>,
    pub group: Group,
}

/// Dimensions and universes shared by every formula built for one machine
/// and bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    pub bound: usize,
    pub states: Vec<State>,
    pub alphabet: Vec<Symbol>,
    pub blank: Symbol,
    pub accept: State,
}

impl Grid {
    /// Same bound, blank, state set and symbol set.
    pub fn compatible_with(&self, other: &Grid) -> bool {
        self.bound == other.bound
            && self.blank == other.blank
            && self.states.iter().collect::<BTreeSet<_>>()
                == other.states.iter().collect::<BTreeSet<_>>()
            && self.alphabet.iter().collect::<BTreeSet<_>>()
                == other.alphabet.iter().collect::<BTreeSet<_>>()
    }

    pub fn cells(&self) -> usize {
        self.bound + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub machine: String,
    pub input: Option<Vec<Symbol>>,
}

/// CNF whose clauses carry their group label and whose variables carry
/// their grid meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledFormula {
    pub grid: Grid,
    /// `meanings[v - 1]` is the meaning of variable `v`.
    pub meanings: Vec<VarMeaning>,
    pub clauses: Vec<Clause>,
    pub provenance: Option<Provenance>,
}

impl LabeledFormula {
    pub fn var_count(&self) -> usize {
        self.meanings.len()
    }

    /// The formula's `j` metric.
    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn bound(&self) -> usize {
        self.grid.bound
    }

    pub fn meaning(&self, var: u32) -> Option<&VarMeaning> {
        self.meanings.get((var as usize).wrapping_sub(1))
    }

    pub fn groups(&self) -> BTreeSet<Group> {
        self.clauses.iter().map(|c| c.group).collect()
    }

    pub fn to_cnf(&self) -> CnfFormula {
        CnfFormula::new(
            self.var_count(),
            self.clauses.iter().map(|c| c.literals.clone()).collect(),
        )
        .expect("labeled formulas only reference their own variables")
    }

    /// Index of the first clause `assignment` falsifies.
    pub fn first_violated(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.literals.iter().any(|&l| assignment.satisfies(l)))
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.first_violated(assignment).is_none()
    }

    fn with_clauses(&self, keep: impl Fn(&Clause) -> bool) -> LabeledFormula {
        LabeledFormula {
            grid: self.grid.clone(),
            meanings: self.meanings.clone(),
            clauses: self.clauses.iter().filter(|c| keep(c)).cloned().collect(),
            provenance: self.provenance.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionError {
    ZeroBound,
    Machine(MachineError),
    InputTooLong {
        len: usize,
        cells: usize,
    },
    NotAccepting,
    BoundExceeded {
        transitions: usize,
        bound: usize,
    },
    /// An input part held run clauses, or a run part held `G4` clauses.
    PartMismatch(String),
    /// The two formulas do not share a grid; no concatenation can be
    /// satisfiable.
    Incompatible(String),
    MalformedModel {
        time: usize,
        reason: String,
    },
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::ZeroBound => f.write_str("step bound must be at least 1"),
            ReductionError::Machine(e) => write!(f, "{e}"),
            ReductionError::InputTooLong { len, cells } => {
                write!(f, "input of length {len} does not fit {cells} cells")
            }
            ReductionError::NotAccepting => f.write_str("history does not end in accept"),
            ReductionError::BoundExceeded { transitions, bound } => {
                write!(f, "history has {transitions} transitions, bound is {bound}")
            }
            ReductionError::PartMismatch(what) => write!(f, "part mismatch: {what}"),
            ReductionError::Incompatible(why) => {
                write!(f, "grids are entirely incompatible: {why}")
            }
            ReductionError::MalformedModel { time, reason } => {
                write!(f, "malformed model at time {time}: {reason}")
            }
        }
    }
}

impl core::error::Error for ReductionError {}

impl From<MachineError> for ReductionError {
    fn from(e: MachineError) -> Self {
        ReductionError::Machine(e)
    }
}

/// Variable numbering for one machine and bound.
struct Layout {
    bound: usize,
    states: usize,
    symbols: usize,
    rules: usize,
}

impl Layout {
    fn cells(&self) -> usize {
        self.bound + 1
    }

    fn q(&self, time: usize, state: usize) -> u32 {
        (1 + time * self.states + state) as u32
    }

    fn h(&self, time: usize, cell: usize) -> u32 {
        let base = (self.bound + 1) * self.states;
        (1 + base + time * self.cells() + cell) as u32
    }

    fn s(&self, time: usize, cell: usize, symbol: usize) -> u32 {
        let base = (self.bound + 1) * (self.states + self.cells());
        (1 + base + (time * self.cells() + cell) * self.symbols + symbol) as u32
    }

    /// `rule == self.rules` is `PAD`.
    fn tr(&self, time: usize, rule: usize) -> u32 {
        let base = (self.bound + 1) * (self.states + self.cells() + self.cells() * self.symbols);
        (1 + base + time * (self.rules + 1) + rule) as u32
    }

    fn var_count(&self) -> usize {
        self.tr(self.bound, 0) as usize - 1
    }
}

struct Emitter {
    clauses: Vec<Clause>,
}

impl Emitter {
    fn push(&mut self, group: Group, literals: Vec<Lit>) {
        self.clauses.push(Clause { literals, group });
    }

    /// One at-least-one clause plus pairwise at-most-one clauses.
    fn exactly_one(&mut self, group: Group, vars: &[u32]) {
        self.push(group, vars.iter().map(|&v| Lit::pos(v)).collect());
        for (a, &x) in vars.iter().enumerate() {
            for &y in &vars[a + 1..] {
                self.push(group, vec![Lit::neg(x), Lit::neg(y)]);
            }
        }
    }
}

/// Encodes "`machine` accepts `input` within `bound` transitions" as a
/// labeled CNF. Satisfiable exactly when [`Machine::accepts_within`] finds a
/// witness.
pub fn reduce(
    machine: &Machine,
    input: &[Symbol],
    bound: usize,
) -> Result<LabeledFormula, ReductionError> {
    if bound == 0 {
        return Err(ReductionError::ZeroBound);
    }
    machine.check_input(input)?;
    if input.len() > bound + 1 {
        return Err(ReductionError::InputTooLong {
            len: input.len(),
            cells: bound + 1,
        });
    }
    let states = machine.states();
    let alphabet = machine.tape_alphabet();
    let rules = machine.rules();
    let lay = Layout {
        bound,
        states: states.len(),
        symbols: alphabet.len(),
        rules: rules.len(),
    };
    let state_ix = |s: &State| states.iter().position(|x| x == s).expect("validated state");
    let symbol_ix = |s: &Symbol| {
        alphabet
            .iter()
            .position(|x| x == s)
            .expect("validated symbol")
    };
    let times = 0..=bound;
    let cells = 0..=bound;

    let mut meanings = Vec::with_capacity(lay.var_count());
    for time in times.clone() {
        for state in states {
            meanings.push(VarMeaning::Q {
                time,
                state: state.clone(),
            });
        }
    }
    for time in times.clone() {
        for cell in cells.clone() {
            meanings.push(VarMeaning::H { time, cell });
        }
    }
    for time in times.clone() {
        for cell in cells.clone() {
            for symbol in alphabet {
                meanings.push(VarMeaning::S {
                    time,
                    cell,
                    symbol: symbol.clone(),
                });
            }
        }
    }
    for time in 0..bound {
        for m in 0..rules.len() {
            meanings.push(VarMeaning::Tr {
                time,
                choice: TrChoice::Rule(m),
            });
        }
        meanings.push(VarMeaning::Tr {
            time,
            choice: TrChoice::Pad,
        });
    }
    debug_assert_eq!(meanings.len(), lay.var_count());

    let mut out = Emitter {
        clauses: Vec::new(),
    };

    for i in times.clone() {
        let vars: Vec<u32> = (0..lay.states).map(|k| lay.q(i, k)).collect();
        out.exactly_one(Group::G1, &vars);
    }
    for i in times.clone() {
        let vars: Vec<u32> = cells.clone().map(|j| lay.h(i, j)).collect();
        out.exactly_one(Group::G2, &vars);
    }
    for i in times.clone() {
        for j in cells.clone() {
            let vars: Vec<u32> = (0..lay.symbols).map(|l| lay.s(i, j, l)).collect();
            out.exactly_one(Group::G3, &vars);
        }
    }

    out.push(
        Group::G4,
        vec![Lit::pos(lay.q(0, state_ix(machine.start())))],
    );
    out.push(Group::G4, vec![Lit::pos(lay.h(0, 0))]);
    for j in cells.clone() {
        let symbol = input.get(j).unwrap_or(machine.blank());
        out.push(Group::G4, vec![Lit::pos(lay.s(0, j, symbol_ix(symbol)))]);
    }

    let accept = state_ix(machine.accept());
    out.push(Group::G5, vec![Lit::pos(lay.q(bound, accept))]);

    for i in 0..bound {
        let choices: Vec<u32> = (0..=rules.len()).map(|m| lay.tr(i, m)).collect();
        out.exactly_one(Group::G6, &choices);

        for (m, rule) in rules.iter().enumerate() {
            let tr = Lit::neg(lay.tr(i, m));
            let read = symbol_ix(&rule.read);
            let write = symbol_ix(&rule.write);
            out.push(
                Group::G6,
                vec![tr, Lit::pos(lay.q(i, state_ix(&rule.state)))],
            );
            out.push(
                Group::G6,
                vec![tr, Lit::pos(lay.q(i + 1, state_ix(&rule.next)))],
            );
            for j in cells.clone() {
                let at = Lit::neg(lay.h(i, j));
                out.push(Group::G6, vec![tr, at, Lit::pos(lay.s(i, j, read))]);
                out.push(Group::G6, vec![tr, at, Lit::pos(lay.s(i + 1, j, write))]);
                let moved = rule.movement.apply(j);
                if moved <= bound {
                    out.push(Group::G6, vec![tr, at, Lit::pos(lay.h(i + 1, moved))]);
                } else {
                    out.push(Group::G6, vec![tr, at]);
                }
            }
        }

        let pad = Lit::neg(lay.tr(i, rules.len()));
        out.push(Group::G6, vec![pad, Lit::pos(lay.q(i, accept))]);
        out.push(Group::G6, vec![pad, Lit::pos(lay.q(i + 1, accept))]);
        for j in cells.clone() {
            let at = Lit::neg(lay.h(i, j));
            out.push(Group::G6, vec![pad, at, Lit::pos(lay.h(i + 1, j))]);
            for l in 0..lay.symbols {
                out.push(
                    Group::G6,
                    vec![
                        pad,
                        at,
                        Lit::neg(lay.s(i, j, l)),
                        Lit::pos(lay.s(i + 1, j, l)),
                    ],
                );
            }
        }

        // frame: cells away from the head keep their symbol
        for j in cells.clone() {
            for l in 0..lay.symbols {
                out.push(
                    Group::G6,
                    vec![
                        Lit::neg(lay.s(i, j, l)),
                        Lit::pos(lay.h(i, j)),
                        Lit::pos(lay.s(i + 1, j, l)),
                    ],
                );
            }
        }
    }

    Ok(LabeledFormula {
        grid: Grid {
            bound,
            states: states.to_vec(),
            alphabet: alphabet.to_vec(),
            blank: machine.blank().clone(),
            accept: machine.accept().clone(),
        },
        meanings,
        clauses: out.clauses,
        provenance: Some(Provenance {
            machine: machine.name().to_string(),
            input: Some(input.to_vec()),
        }),
    })
}

/// The `G4` clauses, with the variable map kept intact.
pub fn input_part(formula: &LabeledFormula) -> LabeledFormula {
    formula.with_clauses(|c| c.group.part() == Part::Input)
}

/// Every clause outside `G4`. The input is dropped from the provenance.
pub fn run_part(formula: &LabeledFormula) -> LabeledFormula {
    let mut run = formula.with_clauses(|c| c.group.part() == Part::Run);
    if let Some(p) = &mut run.provenance {
        p.input = None;
    }
    run
}

/// Conjoins an input part with a run part.
///
/// Variables of `input` are mapped onto the run part's numbering by meaning,
/// so the two may come from different machines as long as they share bound,
/// blank, state set and symbol set.
pub fn concatenate(
    input: &LabeledFormula,
    run: &LabeledFormula,
) -> Result<LabeledFormula, ReductionError> {
    if let Some(c) = input.clauses.iter().find(|c| c.group.part() != Part::Input) {
        return Err(ReductionError::PartMismatch(alloc::format!(
            "input part holds a {} clause",
            c.group
        )));
    }
    if run.clauses.iter().any(|c| c.group.part() == Part::Input) {
        return Err(ReductionError::PartMismatch(
            "run part holds a G4 clause".to_string(),
        ));
    }
    if !input.grid.compatible_with(&run.grid) {
        return Err(ReductionError::Incompatible(alloc::format!(
            "bound {} over {} states / {} symbols vs bound {} over {} states / {} symbols",
            input.grid.bound,
            input.grid.states.len(),
            input.grid.alphabet.len(),
            run.grid.bound,
            run.grid.states.len(),
            run.grid.alphabet.len(),
        )));
    }
    let by_meaning: BTreeMap<&VarMeaning, u32> = run
        .meanings
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i as u32 + 1))
        .collect();
    let mut clauses = Vec::with_capacity(input.clause_count() + run.clause_count());
    for clause in &input.clauses {
        let mut literals = Vec::with_capacity(clause.literals.len());
        for &l in &clause.literals {
            let meaning = input.meaning(l.var()).expect("own variable");
            let Some(&var) = by_meaning.get(meaning) else {
                return Err(ReductionError::Incompatible(alloc::format!(
                    "{meaning} has no counterpart"
                )));
            };
            literals.push(if l.is_positive() {
                Lit::pos(var)
            } else {
                Lit::neg(var)
            });
        }
        clauses.push(Clause {
            literals,
            group: clause.group,
        });
    }
    clauses.extend(run.clauses.iter().cloned());
    let provenance = match (&input.provenance, &run.provenance) {
        (None, None) => None,
        (inp, r) => Some(Provenance {
            machine: r
                .as_ref()
                .or(inp.as_ref())
                .map(|p| p.machine.clone())
                .unwrap_or_default(),
            input: inp.as_ref().and_then(|p| p.input.clone()),
        }),
    };
    Ok(LabeledFormula {
        grid: run.grid.clone(),
        meanings: run.meanings.clone(),
        clauses,
        provenance,
    })
}

/// A reduction together with the model a concrete accepting history
/// induces on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedHistory {
    pub formula: LabeledFormula,
    pub assignment: Assignment,
}

/// Reduces `machine` on the history's input and reads off the assignment
/// the history induces. Histories shorter than `bound` are padded by
/// repeating the accepting configuration.
pub fn encode_history(
    machine: &Machine,
    history: &ComputationHistory,
    bound: usize,
) -> Result<EncodedHistory, ReductionError> {
    machine.check_history(history)?;
    if !history.is_accepting_for(machine.accept()) {
        return Err(ReductionError::NotAccepting);
    }
    if history.transitions() > bound {
        return Err(ReductionError::BoundExceeded {
            transitions: history.transitions(),
            bound,
        });
    }
    let formula = reduce(machine, &history.input, bound)?;
    let lay = Layout {
        bound,
        states: machine.states().len(),
        symbols: machine.tape_alphabet().len(),
        rules: machine.rules().len(),
    };
    let state_ix = |s: &State| machine.states().iter().position(|x| x == s);
    let symbol_ix = |s: &Symbol| machine.tape_alphabet().iter().position(|x| x == s);
    let last = history.transitions();
    let mut assignment = Assignment::all_false(formula.var_count());
    for i in 0..=bound {
        let config = &history.configs[i.min(last)];
        let k = state_ix(&config.state)
            .ok_or_else(|| MachineError::UnknownState(config.state.to_string()))?;
        assignment.set(lay.q(i, k), true);
        if config.head > bound {
            return Err(ReductionError::InputTooLong {
                len: config.head + 1,
                cells: bound + 1,
            });
        }
        assignment.set(lay.h(i, config.head), true);
        for j in 0..=bound {
            let symbol = config.tape.get(j).unwrap_or(machine.blank());
            let l =
                symbol_ix(symbol).ok_or_else(|| MachineError::UnknownSymbol(symbol.to_string()))?;
            assignment.set(lay.s(i, j, l), true);
        }
        if i < bound {
            let choice = if i < last {
                let (from, to) = (&history.configs[i], &history.configs[i + 1]);
                machine
                    .rules()
                    .iter()
                    .position(|r| r.licenses(from, to, machine.blank()))
                    .expect("history checked legal")
            } else {
                lay.rules
            };
            assignment.set(lay.tr(i, choice), true);
        }
    }
    Ok(EncodedHistory {
        formula,
        assignment,
    })
}

/// Reads the configurations out of a model of a reduction (or of a
/// concatenation of an input part and a run part). Tapes span all `T+1`
/// cells. The history ends at the first accepting configuration, dropping
/// the padding steps.
pub fn decode_assignment(
    formula: &LabeledFormula,
    assignment: &Assignment,
) -> Result<ComputationHistory, ReductionError> {
    let grid = &formula.grid;
    let cells = grid.cells();
    let mut states: Vec<Vec<&State>> = vec![Vec::new(); grid.bound + 1];
    let mut heads: Vec<Vec<usize>> = vec![Vec::new(); grid.bound + 1];
    let mut tapes: Vec<Vec<Vec<&Symbol>>> = vec![vec![Vec::new(); cells]; grid.bound + 1];
    for (i, meaning) in formula.meanings.iter().enumerate() {
        if !assignment.get(i as u32 + 1) {
            continue;
        }
        match meaning {
            VarMeaning::Q { time, state } => states[*time].push(state),
            VarMeaning::H { time, cell } => heads[*time].push(*cell),
            VarMeaning::S { time, cell, symbol } => tapes[*time][*cell].push(symbol),
            VarMeaning::Tr { .. } => {}
        }
    }
    let malformed = |time, reason: &str| ReductionError::MalformedModel {
        time,
        reason: reason.to_string(),
    };
    let mut configs = Vec::with_capacity(grid.bound + 1);
    for time in 0..=grid.bound {
        let [state] = states[time][..] else {
            return Err(malformed(time, "not exactly one state"));
        };
        let [head] = heads[time][..] else {
            return Err(malformed(time, "not exactly one head position"));
        };
        let mut tape = Vec::with_capacity(cells);
        for cell in &tapes[time] {
            let [symbol] = cell[..] else {
                return Err(malformed(time, "a cell without exactly one symbol"));
            };
            tape.push(symbol.clone());
        }
        let accepted = state == &grid.accept;
        configs.push(Configuration {
            state: state.clone(),
            head,
            tape,
        });
        if accepted {
            break;
        }
    }
    let input = match formula.provenance.as_ref().and_then(|p| p.input.clone()) {
        Some(input) => input,
        None => configs[0]
            .tape
            .iter()
            .take_while(|s| **s != grid.blank)
            .cloned()
            .collect(),
    };
    Ok(ComputationHistory {
        input,
        blank: grid.blank.clone(),
        configs,
    })
}

/// Clause count for each of the six groups, zeros included.
pub fn clause_counts(formula: &LabeledFormula) -> BTreeMap<Group, usize> {
    let mut counts: BTreeMap<Group, usize> = Group::ALL.iter().map(|&g| (g, 0)).collect();
    for c in &formula.clauses {
        *counts.entry(c.group).or_default() += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::fixtures::*;
    use crate::machine::symbols;
    use crate::sat::{solve_dpll, SolveResult};

    fn multiset(f: &LabeledFormula) -> Vec<(Vec<Lit>, Group)> {
        let mut v: Vec<_> = f
            .clauses
            .iter()
            .map(|c| (c.literals.clone(), c.group))
            .collect();
        v.sort();
        v
    }

    fn sat(f: &LabeledFormula) -> bool {
        solve_dpll(&f.to_cnf()).is_sat()
    }

    #[test]
    fn grid_sizes_for_accept1() {
        let f = reduce(&accept1(), &symbols("1"), 1).unwrap();
        let count = |pred: fn(&VarMeaning) -> bool| f.meanings.iter().filter(|m| pred(m)).count();
        assert_eq!(count(|m| matches!(m, VarMeaning::Q { .. })), 6);
        assert_eq!(count(|m| matches!(m, VarMeaning::H { .. })), 4);
        assert_eq!(count(|m| matches!(m, VarMeaning::S { .. })), 12);
        // one step, three rules plus PAD
        assert_eq!(count(|m| matches!(m, VarMeaning::Tr { .. })), 4);
        assert!(f.meanings[..6]
            .iter()
            .all(|m| matches!(m, VarMeaning::Q { .. })));
    }

    #[test]
    fn accept1_sat_and_unsat() {
        let m = accept1();
        assert!(sat(&reduce(&m, &symbols("1"), 1).unwrap()));
        assert!(!sat(&reduce(&m, &symbols("0"), 2).unwrap()));
    }

    #[test]
    fn reduce_errors() {
        let m = accept1();
        assert_eq!(
            reduce(&m, &symbols("11"), 0),
            Err(ReductionError::ZeroBound)
        );
        assert_eq!(
            reduce(&m, &symbols("111"), 1),
            Err(ReductionError::InputTooLong { len: 3, cells: 2 })
        );
        assert!(matches!(
            reduce(&m, &symbols("2"), 1),
            Err(ReductionError::Machine(MachineError::InvalidInput(_)))
        ));
    }

    #[test]
    fn input_part_is_g4_units() {
        let f = reduce(&accept1(), &symbols("1"), 1).unwrap();
        let x = input_part(&f);
        assert_eq!(x.clause_count(), 4);
        assert!(x.clauses.iter().all(|c| c.literals.len() == 1));
        assert_eq!(x.meanings, f.meanings);
        assert_eq!(input_part(&run_part(&f)).clause_count(), 0);
    }

    #[test]
    fn run_part_groups_and_partition() {
        let f = reduce(&parity(), &symbols("11"), 4).unwrap();
        let r = run_part(&f);
        let x = input_part(&f);
        assert_eq!(r.clause_count() + x.clause_count(), f.clause_count());
        let groups: Vec<_> = r.groups().into_iter().collect();
        assert_eq!(
            groups,
            vec![Group::G1, Group::G2, Group::G3, Group::G5, Group::G6]
        );
        assert_eq!(clause_counts(&r)[&Group::G5], 1);
    }

    #[test]
    fn clause_counts_match_recipe() {
        let f = reduce(&accept1(), &symbols("1"), 1).unwrap();
        let counts = clause_counts(&f);
        assert_eq!(counts[&Group::G4], 4);
        assert_eq!(counts[&Group::G5], 1);
        assert_eq!(counts.values().sum::<usize>(), f.clause_count());
        // G1: per time 1 ALO + C(3,2) AMO; G2: 1 + 1 per time; G3: 4 per cell
        assert_eq!(counts[&Group::G1], 2 * 4);
        assert_eq!(counts[&Group::G2], 2 * 2);
        assert_eq!(counts[&Group::G3], 4 * 4);
    }

    #[test]
    fn reassembly_is_identity() {
        let f = reduce(&nd(), &symbols("10"), 3).unwrap();
        let back = concatenate(&input_part(&f), &run_part(&f)).unwrap();
        assert_eq!(multiset(&back), multiset(&f));
        assert_eq!(back.meanings, f.meanings);
    }

    #[test]
    fn concatenate_cross_input() {
        let m = accept1();
        let yes = reduce(&m, &symbols("1"), 2).unwrap();
        let no = reduce(&m, &symbols("0"), 2).unwrap();
        assert!(sat(&concatenate(&input_part(&yes), &run_part(&no)).unwrap()));
        assert!(!sat(
            &concatenate(&input_part(&no), &run_part(&yes)).unwrap()
        ));
    }

    #[test]
    fn concatenate_same_universe_other_machine() {
        // m_nd shares states and alphabet with m_accept1 but has other rules.
        let cy = input_part(&reduce(&accept1(), &symbols("1"), 2).unwrap());
        let cr = run_part(&reduce(&nd(), &symbols("1"), 2).unwrap());
        let c = concatenate(&cy, &cr).unwrap();
        assert_eq!(c.clause_count(), cy.clause_count() + cr.clause_count());
        assert!(sat(&c));
    }

    #[test]
    fn concatenate_rejects_incompatible_and_misplaced_parts() {
        let a = reduce(&accept1(), &symbols("1"), 2).unwrap();
        let p = reduce(&parity(), &symbols("1"), 2).unwrap();
        assert!(matches!(
            concatenate(&input_part(&a), &run_part(&p)),
            Err(ReductionError::Incompatible(_))
        ));
        let a3 = reduce(&accept1(), &symbols("1"), 3).unwrap();
        assert!(matches!(
            concatenate(&input_part(&a), &run_part(&a3)),
            Err(ReductionError::Incompatible(_))
        ));
        assert!(matches!(
            concatenate(&a, &run_part(&a)),
            Err(ReductionError::PartMismatch(_))
        ));
        assert!(matches!(
            concatenate(&input_part(&a), &a),
            Err(ReductionError::PartMismatch(_))
        ));
    }

    #[test]
    fn encode_history_induces_a_model() {
        let m = accept1();
        let h = m.accepts_within(&symbols("1"), 1).unwrap().unwrap();
        let enc = encode_history(&m, &h, 1).unwrap();
        assert!(enc.formula.is_satisfied_by(&enc.assignment));
        assert!(enc.formula.clause_count() > h.transitions());
        let back = decode_assignment(&enc.formula, &enc.assignment).unwrap();
        assert!(back.equivalent(&h));
    }

    #[test]
    fn encode_pads_zero_step_history() {
        let m = MachineBuilder::new("instant")
            .states(&["q"])
            .input_alphabet(&["1"])
            .tape_alphabet(&["1", "_"])
            .blank("_")
            .start("q")
            .accept("q")
            .build()
            .unwrap();
        let h = m.accepts_within(&symbols("1"), 1).unwrap().unwrap();
        assert_eq!(h.transitions(), 0);
        let enc = encode_history(&m, &h, 1).unwrap();
        assert!(enc.formula.is_satisfied_by(&enc.assignment));
        let back = decode_assignment(&enc.formula, &enc.assignment).unwrap();
        assert_eq!(back.transitions(), 0);
    }

    #[test]
    fn encode_history_errors() {
        let m = accept1();
        let h = m.accepts_within(&symbols("1"), 1).unwrap().unwrap();
        let p = parity().accepts_within(&symbols("11"), 3).unwrap().unwrap();
        assert!(matches!(
            encode_history(&m, &p, 3),
            Err(ReductionError::Machine(MachineError::IllegalHistory { .. }))
        ));
        let stuck = ComputationHistory::new(
            symbols("0"),
            "_".into(),
            vec![
                Configuration::new("q0", 0, symbols("0")),
                Configuration::new("qrej", 1, symbols("0_")),
            ],
        )
        .unwrap();
        assert_eq!(
            encode_history(&m, &stuck, 2),
            Err(ReductionError::NotAccepting)
        );
        let pm = parity();
        assert_eq!(
            encode_history(&pm, &p, 2),
            Err(ReductionError::BoundExceeded {
                transitions: 3,
                bound: 2
            })
        );
        let _ = h;
    }

    #[test]
    fn decode_solver_model() {
        let f = reduce(&accept1(), &symbols("1"), 1).unwrap();
        let SolveResult::Sat(model) = solve_dpll(&f.to_cnf()) else {
            panic!("expected sat");
        };
        let h = decode_assignment(&f, &model).unwrap();
        assert_eq!(
            h.configs,
            vec![
                Configuration::new("q0", 0, symbols("1_")),
                Configuration::new("qacc", 1, symbols("1_")),
            ]
        );
        let enc = encode_history(&accept1(), &h, 1).unwrap();
        assert!(f.is_satisfied_by(&enc.assignment));
    }

    #[test]
    fn decode_rejects_malformed_model() {
        let f = reduce(&accept1(), &symbols("1"), 1).unwrap();
        let all_false = Assignment::all_false(f.var_count());
        assert!(matches!(
            decode_assignment(&f, &all_false),
            Err(ReductionError::MalformedModel { time: 0, .. })
        ));
    }

    use crate::machine::MachineBuilder;
}
