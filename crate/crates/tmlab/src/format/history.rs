//! Computation history files.
//!
//! ```text
//! machine: m_accept1.tm      # optional, relative to the history file
//! input: 1
//! blank: _
//! config: q0 0 1
//! config: qacc 1 1 _
//! ```
//!
//! Each `config:` line is the state, the head cell and then the tape
//! symbols separated by spaces.

use std::fmt::Write;

use tmlab_core::machine::{ComputationHistory, Configuration, State, Symbol};

use super::{key_value, parse_input, render_input, syntax, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistoryFile {
    pub machine: Option<String>,
    pub history: ComputationHistory,
}

pub fn parse_history(text: &str) -> Result<HistoryFile, FormatError> {
    let mut machine = None;
    let mut input = None;
    let mut blank = None;
    let mut configs = Vec::new();
    let mut last = 1;
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        last = number;
        let Some((key, value)) = key_value(number, line)? else {
            continue;
        };
        match key {
            "machine" => machine = Some(value.to_string()),
            "input" => input = Some(parse_input(value)),
            "blank" => blank = Some(Symbol::new(value)),
            "config" => {
                let mut tokens = value.split_whitespace();
                let state = tokens
                    .next()
                    .ok_or_else(|| syntax(number, "config needs a state"))?;
                let head: usize = tokens
                    .next()
                    .and_then(|h| h.parse().ok())
                    .ok_or_else(|| syntax(number, "config needs a head position"))?;
                let tape: Vec<Symbol> = tokens.map(Symbol::new).collect();
                if head >= tape.len() {
                    return Err(syntax(number, "head lies beyond the tape"));
                }
                configs.push(Configuration::new(State::new(state), head, tape));
            }
            other => return Err(syntax(number, format!("unknown key `{other}`"))),
        }
    }
    let input = input.ok_or_else(|| syntax(last, "missing `input:`"))?;
    let blank = blank.ok_or_else(|| syntax(last, "missing `blank:`"))?;
    let history = ComputationHistory::new(input, blank, configs)
        .map_err(|_| syntax(last, "history needs at least one `config:`"))?;
    Ok(HistoryFile { machine, history })
}

pub fn render_history(history: &ComputationHistory, machine: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(m) = machine {
        writeln!(out, "machine: {m}").unwrap();
    }
    writeln!(out, "input: {}", render_input(&history.input)).unwrap();
    writeln!(out, "blank: {}", history.blank).unwrap();
    for c in &history.configs {
        let tape: Vec<&str> = c.tape.iter().map(|s| s.as_str()).collect();
        writeln!(out, "config: {} {} {}", c.state, c.head, tape.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "machine: m.tm\ninput: 1\nblank: _\nconfig: q0 0 1\nconfig: qacc 1 1 _\n";
        let f = parse_history(text).unwrap();
        assert_eq!(f.machine.as_deref(), Some("m.tm"));
        assert_eq!(f.history.transitions(), 1);
        assert_eq!(render_history(&f.history, Some("m.tm")), text);
    }

    #[test]
    fn empty_input_and_errors() {
        let f = parse_history("input:\nblank: _\nconfig: q 0 _\n").unwrap();
        assert!(f.history.input.is_empty());
        assert!(parse_history("input: 1\nblank: _\n").is_err());
        assert!(parse_history("input: 1\nblank: _\nconfig: q 3 1\n").is_err());
        assert!(parse_history("blank: _\nconfig: q 0 1\n").is_err());
    }
}
