//! The parity-counting machine `M_i` built over a library of run parts.
//!
//! `M_i` is executed as an interpreted algorithm rather than compiled to a
//! transition table. On input `y` it builds the input part `c^y` from its
//! base machine, conjoins it with every stored run part, hands each
//! conjunction to the DPLL solver and accepts when the number of satisfiable
//! conjunctions is odd.
//!
//! The run's step count `i` is measured by a lower bound: the number of
//! clauses materialized, `|c^y|` plus the size of every conjunction.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::machine::{ComputationHistory, Machine, Symbol, TransitionTable};
use crate::reduction::{
    clause_counts, concatenate, decode_assignment, encode_history, input_part, reduce, run_part,
    Group, LabeledFormula, ReductionError,
};
use crate::sat::{solve_dpll, SolveResult};

/// One stored run part together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LibraryEntry {
    pub machine: Machine,
    pub history: ComputationHistory,
    pub run_part: LabeledFormula,
}

/// The run parts `C^r` in fixed index order. No entry holds a `G4` clause.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunPartLibrary {
    entries: Vec<LibraryEntry>,
}

impl RunPartLibrary {
    pub fn entries(&self) -> &[LibraryEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KimMachine {
    library: RunPartLibrary,
    base: Machine,
    bound: usize,
    incompatible_pairs: Vec<(usize, usize)>,
}

impl KimMachine {
    pub fn library(&self) -> &RunPartLibrary {
        &self.library
    }

    /// Machine whose initial configuration `c^y` encodes.
    pub fn base(&self) -> &Machine {
        &self.base
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Library index pairs `(a, b)`, `a < b`, whose grids do not unify.
    pub fn incompatible_pairs(&self) -> &[(usize, usize)] {
        &self.incompatible_pairs
    }

    /// Same machine with library entries reordered by `order`, a permutation
    /// of `0..len`.
    pub fn permuted(&self, order: &[usize]) -> KimMachine {
        let entries = order
            .iter()
            .map(|&i| self.library.entries[i].clone())
            .collect();
        let library = RunPartLibrary { entries };
        KimMachine {
            incompatible_pairs: scan_incompatible(&library),
            library,
            base: self.base.clone(),
            bound: self.bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KimError {
    ZeroBound,
    Entry { index: usize, error: ReductionError },
    Input(ReductionError),
    OutOfRange(usize),
    NoHistory(usize),
}

impl fmt::Display for KimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KimError::ZeroBound => f.write_str("bound must be at least 1"),
            KimError::Entry { index, error } => write!(f, "library entry {index}: {error}"),
            KimError::Input(e) => write!(f, "input rejected: {e}"),
            KimError::OutOfRange(i) => write!(f, "no instance with index {i}"),
            KimError::NoHistory(i) => {
                write!(
                    f,
                    "instance {i} is not satisfiable and has no decoded history"
                )
            }
        }
    }
}

impl core::error::Error for KimError {}

fn scan_incompatible(library: &RunPartLibrary) -> Vec<(usize, usize)> {
    let entries = &library.entries;
    let mut pairs = Vec::new();
    for a in 0..entries.len() {
        for b in a + 1..entries.len() {
            if !entries[a]
                .run_part
                .grid
                .compatible_with(&entries[b].run_part.grid)
            {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Stores `run_part(encode_history(m, h, bound))` for every history, in the
/// given order.
pub fn build_kim_machine(
    histories: Vec<(Machine, ComputationHistory)>,
    bound: usize,
    base: Machine,
) -> Result<KimMachine, KimError> {
    if bound == 0 {
        return Err(KimError::ZeroBound);
    }
    let mut entries = Vec::with_capacity(histories.len());
    for (index, (machine, history)) in histories.into_iter().enumerate() {
        let encoded = encode_history(&machine, &history, bound)
            .map_err(|error| KimError::Entry { index, error })?;
        entries.push(LibraryEntry {
            run_part: run_part(&encoded.formula),
            machine,
            history,
        });
    }
    let library = RunPartLibrary { entries };
    Ok(KimMachine {
        incompatible_pairs: scan_incompatible(&library),
        library,
        base,
        bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
    /// The grids do not unify; counted as unsatisfiable.
    Incompatible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Incompatible => "incompatible",
        }
    }
}

/// One conjunction `c_j = c^y ∧ c^r_j` and what the solver said about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub index: usize,
    /// Absent when the grids are incompatible.
    pub formula: Option<LabeledFormula>,
    /// `|c^y| + |c^r_j|`, also for incompatible instances.
    pub clause_count: usize,
    pub group_counts: BTreeMap<Group, usize>,
    pub verdict: Verdict,
    pub history: Option<ComputationHistory>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KimRunReport {
    pub input: Vec<Symbol>,
    pub bound: usize,
    pub input_part_clauses: usize,
    pub instances: Vec<Instance>,
    pub counter: usize,
    pub accept: bool,
    /// Clauses materialized: `|c^y|` plus every instance's clause count.
    pub cost: usize,
}

impl KimRunReport {
    pub fn first_satisfiable(&self) -> Option<usize> {
        self.instances
            .iter()
            .position(|i| i.verdict == Verdict::Sat)
    }
}

/// Runs `M_i` on `input`.
pub fn run_kim_machine(km: &KimMachine, input: &[Symbol]) -> Result<KimRunReport, KimError> {
    let cy = input_part(&reduce(&km.base, input, km.bound).map_err(KimError::Input)?);
    let cy_counts = clause_counts(&cy);
    let mut instances = Vec::with_capacity(km.library.len());
    let mut counter = 0;
    let mut cost = cy.clause_count();
    for (index, entry) in km.library.entries.iter().enumerate() {
        let clause_count = cy.clause_count() + entry.run_part.clause_count();
        cost += clause_count;
        let instance = match concatenate(&cy, &entry.run_part) {
            Ok(formula) => {
                let (verdict, history) = match solve_dpll(&formula.to_cnf()) {
                    SolveResult::Sat(model) => {
                        let h = decode_assignment(&formula, &model)
                            .expect("solver models satisfy the uniqueness groups");
                        (Verdict::Sat, Some(h))
                    }
                    SolveResult::Unsat => (Verdict::Unsat, None),
                };
                Instance {
                    index,
                    group_counts: clause_counts(&formula),
                    clause_count,
                    formula: Some(formula),
                    verdict,
                    history,
                }
            }
            Err(_) => {
                let mut group_counts = clause_counts(&entry.run_part);
                for (g, n) in &cy_counts {
                    *group_counts.entry(*g).or_default() += n;
                }
                Instance {
                    index,
                    formula: None,
                    clause_count,
                    group_counts,
                    verdict: Verdict::Incompatible,
                    history: None,
                }
            }
        };
        if instance.verdict == Verdict::Sat {
            counter += 1;
        }
        instances.push(instance);
    }
    Ok(KimRunReport {
        input: input.to_vec(),
        bound: km.bound,
        input_part_clauses: cy.clause_count(),
        instances,
        counter,
        accept: counter % 2 == 1,
        cost,
    })
}

/// The counts `i`, `j` and `k` for one chosen instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Metrics {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

pub fn transition_metrics(report: &KimRunReport, chosen: usize) -> Result<Metrics, KimError> {
    let instance = report
        .instances
        .get(chosen)
        .ok_or(KimError::OutOfRange(chosen))?;
    let history = instance
        .history
        .as_ref()
        .ok_or(KimError::NoHistory(chosen))?;
    Ok(Metrics {
        i: report.cost,
        j: instance.clause_count,
        k: history.transitions(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClaimReport {
    pub i_gt_j: bool,
    pub j_gt_k: bool,
    pub i_eq_k: bool,
    /// `i > j > k`.
    pub chain: bool,
    /// `chain ∧ i = k`; false for every triple.
    pub contradiction: bool,
    /// `chain ⇒ i ≠ k`; true for every triple.
    pub chain_excludes_equality: bool,
}

pub fn check_counting_claims(m: Metrics) -> ClaimReport {
    let i_gt_j = m.i > m.j;
    let j_gt_k = m.j > m.k;
    let i_eq_k = m.i == m.k;
    let chain = i_gt_j && j_gt_k;
    ClaimReport {
        i_gt_j,
        j_gt_k,
        i_eq_k,
        chain,
        contradiction: chain && i_eq_k,
        chain_excludes_equality: !chain || !i_eq_k,
    }
}

/// A particular table extracted from one decoded instance that also
/// generates the decoded history of another instance on the same input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoWitness {
    pub candidate: usize,
    pub input: Vec<Symbol>,
    pub source: usize,
    pub other: usize,
    pub table: TransitionTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Examined {
    /// Satisfiable instance `source`, table checked against `others`.
    Instance {
        candidate: usize,
        input: Vec<Symbol>,
        source: usize,
        others: Vec<usize>,
    },
    /// The decoded history is not a legal run of the entry's machine from its
    /// initial configuration, so no particular table exists for it.
    NoTable {
        candidate: usize,
        input: Vec<Symbol>,
        source: usize,
        reason: String,
    },
    /// The candidate refused the input.
    Rejected {
        candidate: usize,
        input: Vec<Symbol>,
        reason: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoSearchReport {
    pub witnesses: Vec<MoWitness>,
    pub examined: Vec<Examined>,
}

impl MoSearchReport {
    pub fn witness(&self) -> Option<&MoWitness> {
        self.witnesses.first()
    }
}

/// Exhaustive search for a shared particular table among the decoded
/// histories of each candidate's run on each input.
pub fn find_m_o(candidates: &[KimMachine], inputs: &[Vec<Symbol>]) -> MoSearchReport {
    let mut report = MoSearchReport::default();
    for (candidate, km) in candidates.iter().enumerate() {
        for input in inputs {
            let run = match run_kim_machine(km, input) {
                Ok(run) => run,
                Err(e) => {
                    report.examined.push(Examined::Rejected {
                        candidate,
                        input: input.clone(),
                        reason: e.to_string(),
                    });
                    continue;
                }
            };
            let decoded: Vec<(usize, &ComputationHistory)> = run
                .instances
                .iter()
                .filter_map(|inst| inst.history.as_ref().map(|h| (inst.index, h)))
                .collect();
            for &(source, history) in &decoded {
                let machine = &km.library.entries[source].machine;
                let table = match machine.extract_particular_table(history) {
                    Ok(t) => t,
                    Err(e) => {
                        report.examined.push(Examined::NoTable {
                            candidate,
                            input: input.clone(),
                            source,
                            reason: e.to_string(),
                        });
                        continue;
                    }
                };
                let others: Vec<usize> = decoded
                    .iter()
                    .map(|&(i, _)| i)
                    .filter(|&i| i != source)
                    .collect();
                for &(other, other_history) in &decoded {
                    if other != source && table.generates(other_history) {
                        report.witnesses.push(MoWitness {
                            candidate,
                            input: input.clone(),
                            source,
                            other,
                            table: table.clone(),
                        });
                    }
                }
                report.examined.push(Examined::Instance {
                    candidate,
                    input: input.clone(),
                    source,
                    others,
                });
            }
        }
    }
    report
}
