//! Text formats: machine and table descriptions, computation histories,
//! DIMACS and the propositional formula grammar.

pub mod dimacs;
pub mod history;
pub mod machine;
pub mod prop;

use thiserror::Error;
use tmlab_core::machine::MachineError;
use tmlab_core::Symbol;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Semantic(#[from] MachineError),
}

pub(crate) fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits `line` into a `key: value` pair, skipping blanks and `#` comments.
/// Returns `Ok(None)` for lines with no content.
pub(crate) fn key_value(number: usize, line: &str) -> Result<Option<(&str, &str)>, FormatError> {
    let content = line.split('#').next().unwrap_or("").trim();
    if content.is_empty() {
        return Ok(None);
    }
    let (key, value) = content
        .split_once(':')
        .ok_or_else(|| syntax(number, format!("expected `key: value`, found `{content}`")))?;
    Ok(Some((key.trim(), value.trim())))
}

/// Reads an input string. Whitespace-separated tokens are symbols; without
/// whitespace every character is its own symbol.
pub fn parse_input(text: &str) -> Vec<Symbol> {
    let text = text.trim();
    if text.contains(char::is_whitespace) {
        text.split_whitespace().map(Symbol::new).collect()
    } else {
        tmlab_core::machine::symbols(text)
    }
}

/// Inverse of [`parse_input`] for single-character alphabets; otherwise
/// joins with spaces.
pub fn render_input(input: &[Symbol]) -> String {
    if input.iter().all(|s| s.as_str().chars().count() == 1) {
        input.iter().map(|s| s.as_str()).collect()
    } else {
        input
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_forms() {
        assert_eq!(parse_input("101").len(), 3);
        assert_eq!(
            parse_input("ab c"),
            vec![Symbol::new("ab"), Symbol::new("c")]
        );
        assert!(parse_input("").is_empty());
        assert_eq!(render_input(&parse_input("101")), "101");
        assert_eq!(render_input(&parse_input("ab c")), "ab c");
    }
}
