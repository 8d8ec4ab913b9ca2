//! Line-oriented machine and table descriptions.
//!
//! ```text
//! # comment
//! name: m_accept1
//! states: q0 qacc qrej
//! start: q0
//! accept: qacc
//! reject: qrej
//! blank: _
//! input_alphabet: 0 1
//! tape_alphabet: 0 1 _
//! rule: q0 1 -> qacc 1 R
//! ```
//!
//! A table file carries only `start:` and `rule:` lines. Merged tables are
//! rendered with an extra `select:` line naming the selector's targets.

use std::fmt::Write;

use tmlab_core::machine::{MachineBuilder, Move, Rule, State, Symbol, TransitionTable};
use tmlab_core::Machine;

use super::{key_value, syntax, FormatError};

fn parse_rule(number: usize, value: &str) -> Result<Rule, FormatError> {
    let tokens: Vec<&str> = value.split_whitespace().collect();
    match tokens[..] {
        [state, read, "->", next, write, movement] => {
            let movement = Move::from_letter(movement).ok_or_else(|| {
                syntax(
                    number,
                    format!("move must be L, R or S, found `{movement}`"),
                )
            })?;
            Ok(Rule::new(state, read, next, write, movement))
        }
        _ => Err(syntax(
            number,
            format!("expected `STATE SYMBOL -> STATE SYMBOL MOVE`, found `{value}`"),
        )),
    }
}

fn single(number: usize, key: &str, value: &str) -> Result<String, FormatError> {
    let mut tokens = value.split_whitespace();
    match (tokens.next(), tokens.next()) {
        (Some(v), None) => Ok(v.to_string()),
        _ => Err(syntax(number, format!("`{key}` takes exactly one value"))),
    }
}

/// Parses a machine description. `default_name` is used when the text has
/// no `name:` line.
pub fn parse_machine(text: &str, default_name: &str) -> Result<Machine, FormatError> {
    let mut b = MachineBuilder::new(default_name);
    let mut seen = std::collections::BTreeSet::new();
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        last_line = number;
        let Some((key, value)) = key_value(number, line)? else {
            continue;
        };
        if key != "rule" && !seen.insert(key.to_string()) {
            return Err(syntax(number, format!("`{key}` given twice")));
        }
        match key {
            "name" => b.name = single(number, key, value)?,
            "states" => b.states = value.split_whitespace().map(State::new).collect(),
            "input_alphabet" => {
                b.input_alphabet = value.split_whitespace().map(Symbol::new).collect()
            }
            "tape_alphabet" => {
                b.tape_alphabet = value.split_whitespace().map(Symbol::new).collect()
            }
            "blank" => b.blank = Some(Symbol::new(single(number, key, value)?)),
            "start" => b.start = Some(State::new(single(number, key, value)?)),
            "accept" => b.accept = Some(State::new(single(number, key, value)?)),
            "reject" => b.reject = Some(State::new(single(number, key, value)?)),
            "rule" => b.rules.push(parse_rule(number, value)?),
            other => return Err(syntax(number, format!("unknown key `{other}`"))),
        }
    }
    for required in ["states", "start", "accept", "blank", "tape_alphabet"] {
        if !seen.contains(required) {
            return Err(syntax(last_line.max(1), format!("missing `{required}:`")));
        }
    }
    if !seen.contains("input_alphabet") {
        return Err(syntax(last_line.max(1), "missing `input_alphabet:`"));
    }
    Ok(b.build()?)
}

pub fn render_machine(m: &Machine) -> String {
    let join = |items: Vec<&str>| items.join(" ");
    let mut out = String::new();
    writeln!(out, "name: {}", m.name()).unwrap();
    writeln!(
        out,
        "states: {}",
        join(m.states().iter().map(|s| s.as_str()).collect())
    )
    .unwrap();
    writeln!(out, "start: {}", m.start()).unwrap();
    writeln!(out, "accept: {}", m.accept()).unwrap();
    if let Some(r) = m.reject() {
        writeln!(out, "reject: {r}").unwrap();
    }
    writeln!(out, "blank: {}", m.blank()).unwrap();
    writeln!(
        out,
        "input_alphabet: {}",
        join(m.input_alphabet().iter().map(|s| s.as_str()).collect())
    )
    .unwrap();
    writeln!(
        out,
        "tape_alphabet: {}",
        join(m.tape_alphabet().iter().map(|s| s.as_str()).collect())
    )
    .unwrap();
    for r in m.rules() {
        writeln!(out, "rule: {r}").unwrap();
    }
    out
}

/// Parses a table file, or takes the table of a full machine description.
pub fn parse_table(text: &str) -> Result<TransitionTable, FormatError> {
    let is_machine = text
        .lines()
        .filter_map(|l| l.split('#').next())
        .any(|l| l.trim_start().starts_with("states:"));
    if is_machine {
        return Ok(parse_machine(text, "table")?.table().clone());
    }
    let mut start = None;
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        let Some((key, value)) = key_value(number, line)? else {
            continue;
        };
        match key {
            "start" if start.is_none() => start = Some(single(number, key, value)?),
            "start" => return Err(syntax(number, "`start` given twice")),
            "rule" => rules.push(parse_rule(number, value)?),
            "select" => {
                return Err(syntax(
                    number,
                    "merged tables cannot be read back; merge the original tables instead",
                ))
            }
            other => return Err(syntax(number, format!("unknown key `{other}`"))),
        }
    }
    let start = start.ok_or_else(|| syntax(text.lines().count().max(1), "missing `start:`"))?;
    Ok(TransitionTable::new(State::new(start), rules)?)
}

pub fn render_table(t: &TransitionTable) -> String {
    let mut out = String::new();
    writeln!(out, "start: {}", t.start()).unwrap();
    if let Some(sel) = t.selector() {
        let targets: Vec<&str> = sel.targets().map(|s| s.as_str()).collect();
        writeln!(out, "select: {} -> {}", sel.from, targets.join(" ")).unwrap();
    }
    for r in t.rules() {
        writeln!(out, "rule: {r}").unwrap();
    }
    out
}
