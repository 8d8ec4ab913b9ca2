//! JSON and text renderings of run reports. Field order in every struct is
//! the order keys appear in the output.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use tmlab_core::argument::{ArgumentForm, KimArgumentAnalysis, Validity};
use tmlab_core::kim::{
    check_counting_claims, transition_metrics, KimError, KimMachine, KimRunReport,
};
use tmlab_core::reduction::{clause_counts, Group};

use crate::format::render_input;

#[derive(Debug, Serialize)]
pub struct InstanceJson {
    pub index: usize,
    pub clauses: usize,
    pub groups: BTreeMap<String, usize>,
    pub verdict: &'static str,
    pub history_len: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct MetricsJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Debug, Serialize)]
pub struct ClaimsJson {
    pub i_gt_j: bool,
    pub j_gt_k: bool,
    pub i_eq_k: bool,
}

#[derive(Debug, Serialize)]
pub struct KimReportJson {
    pub input: String,
    pub bound: usize,
    pub instances: Vec<InstanceJson>,
    pub counter: usize,
    pub accept: bool,
    pub cost: usize,
    pub metrics: Option<MetricsJson>,
    pub claims: Option<ClaimsJson>,
}

fn group_map(counts: &BTreeMap<Group, usize>) -> BTreeMap<String, usize> {
    Group::ALL
        .iter()
        .map(|g| (g.to_string(), counts.get(g).copied().unwrap_or(0)))
        .collect()
}

/// Metrics are taken at `chosen`, or at the first satisfiable instance when
/// `chosen` is `None`. They are `null` when no satisfiable instance exists.
pub fn kim_report_json(
    report: &KimRunReport,
    chosen: Option<usize>,
) -> Result<KimReportJson, KimError> {
    let metrics = match chosen.or_else(|| report.first_satisfiable()) {
        Some(idx) => Some(transition_metrics(report, idx)?),
        None => None,
    };
    Ok(KimReportJson {
        input: render_input(&report.input),
        bound: report.bound,
        instances: report
            .instances
            .iter()
            .map(|inst| InstanceJson {
                index: inst.index,
                clauses: inst.clause_count,
                groups: group_map(&inst.group_counts),
                verdict: inst.verdict.as_str(),
                history_len: inst.history.as_ref().map(|h| h.transitions()),
            })
            .collect(),
        counter: report.counter,
        accept: report.accept,
        cost: report.cost,
        claims: metrics.map(|m| {
            let c = check_counting_claims(m);
            ClaimsJson {
                i_gt_j: c.i_gt_j,
                j_gt_k: c.j_gt_k,
                i_eq_k: c.i_eq_k,
            }
        }),
        metrics: metrics.map(|m| MetricsJson {
            i: m.i,
            j: m.j,
            k: m.k,
        }),
    })
}

pub fn kim_report_text(json: &KimReportJson) -> String {
    let mut out = String::new();
    writeln!(out, "input \"{}\" bound {}", json.input, json.bound).unwrap();
    for inst in &json.instances {
        write!(
            out,
            "  c_{}: {} clauses, {}",
            inst.index, inst.clauses, inst.verdict
        )
        .unwrap();
        if let Some(k) = inst.history_len {
            write!(out, ", decoded history of {k} transitions").unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "counter {} -> {}",
        json.counter,
        if json.accept { "accept" } else { "reject" }
    )
    .unwrap();
    writeln!(out, "cost {} clauses materialized", json.cost).unwrap();
    match (&json.metrics, &json.claims) {
        (Some(m), Some(c)) => {
            writeln!(out, "metrics i={} j={} k={}", m.i, m.j, m.k).unwrap();
            writeln!(
                out,
                "claims i>j={} j>k={} i=k={}",
                c.i_gt_j, c.j_gt_k, c.i_eq_k
            )
            .unwrap();
        }
        _ => out.push_str("metrics unavailable: no satisfiable instance\n"),
    }
    out
}

#[derive(Debug, Serialize)]
pub struct LibraryEntryJson {
    pub index: usize,
    pub machine: String,
    pub input: String,
    pub history_len: usize,
    pub clauses: usize,
    pub groups: BTreeMap<String, usize>,
}

#[derive(Debug, Serialize)]
pub struct LibraryJson {
    pub bound: usize,
    pub base: String,
    pub entries: Vec<LibraryEntryJson>,
    pub incompatible_pairs: Vec<(usize, usize)>,
}

pub fn library_json(km: &KimMachine) -> LibraryJson {
    LibraryJson {
        bound: km.bound(),
        base: km.base().name().to_string(),
        entries: km
            .library()
            .entries()
            .iter()
            .enumerate()
            .map(|(index, e)| LibraryEntryJson {
                index,
                machine: e.machine.name().to_string(),
                input: render_input(&e.history.input),
                history_len: e.history.transitions(),
                clauses: e.run_part.clause_count(),
                groups: group_map(&clause_counts(&e.run_part)),
            })
            .collect(),
        incompatible_pairs: km.incompatible_pairs().to_vec(),
    }
}

#[derive(Debug, Serialize)]
pub struct SchemaJson {
    pub premises: Vec<String>,
    pub conclusion: String,
}

impl From<&ArgumentForm> for SchemaJson {
    fn from(arg: &ArgumentForm) -> Self {
        SchemaJson {
            premises: arg.premises.iter().map(|p| p.to_string()).collect(),
            conclusion: arg.conclusion.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ValidityJson {
    pub schema: SchemaJson,
    pub valid: bool,
    pub vacuous: bool,
    pub counterexample: Option<BTreeMap<String, bool>>,
}

pub fn validity_json(arg: &ArgumentForm, v: &Validity) -> ValidityJson {
    ValidityJson {
        schema: arg.into(),
        valid: v.valid,
        vacuous: v.vacuous,
        counterexample: v
            .counterexample
            .as_ref()
            .map(|c| c.iter().map(|(k, v)| (k.clone(), *v)).collect()),
    }
}

#[derive(Debug, Serialize)]
pub struct KimAnalysisJson {
    pub schema: SchemaJson,
    pub schema_valid: bool,
    pub schema_vacuous: bool,
    pub axiom: String,
    pub implication_follows_from_axiom: bool,
    pub negated_implication_satisfiable: bool,
    pub premises_with_axiom: Vec<String>,
    pub valid: bool,
    pub vacuous: bool,
    pub premise_set_satisfiable: bool,
}

pub fn kim_analysis_json(a: &KimArgumentAnalysis) -> KimAnalysisJson {
    KimAnalysisJson {
        schema: (&a.schema).into(),
        schema_valid: a.schema_validity.valid,
        schema_vacuous: a.schema_validity.vacuous,
        axiom: a.axiom.to_string(),
        implication_follows_from_axiom: a.implication_follows_from_axiom,
        negated_implication_satisfiable: a.negated_implication_satisfiable,
        premises_with_axiom: a
            .with_axiom
            .premises
            .iter()
            .map(|p| p.to_string())
            .collect(),
        valid: a.with_axiom_validity.valid,
        vacuous: a.with_axiom_validity.vacuous,
        premise_set_satisfiable: a.premise_set_satisfiable,
    }
}

pub fn kim_analysis_text(j: &KimAnalysisJson) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "schema: {} |= {}",
        j.schema.premises.join(", "),
        j.schema.conclusion
    )
    .unwrap();
    writeln!(
        out,
        "(a) schema valid={} vacuous={}",
        j.schema_valid, j.schema_vacuous
    )
    .unwrap();
    writeln!(
        out,
        "(b) with axiom {}: P2 -> P3 is a tautology={}",
        j.axiom, j.implication_follows_from_axiom
    )
    .unwrap();
    writeln!(
        out,
        "(c) {{{}, !(P2 -> P3)}} satisfiable={}",
        j.axiom, j.negated_implication_satisfiable
    )
    .unwrap();
    writeln!(
        out,
        "(d) premises {{{}}}: valid={} vacuous={} premise_set_satisfiable={}",
        j.premises_with_axiom.join(", "),
        j.valid,
        j.vacuous,
        j.premise_set_satisfiable
    )
    .unwrap();
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
