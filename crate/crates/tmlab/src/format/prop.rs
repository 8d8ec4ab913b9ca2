//! Propositional formula grammar.
//!
//! Atoms are identifiers such as `P1`. Operators from tightest to loosest:
//! `!`, `&`, `|`, `->`, `<->`. Implication and equivalence associate to the
//! right. Argument schema files list `premise:` lines and one `conclusion:`.

use thiserror::Error;
use tmlab_core::argument::{ArgumentForm, PropFormula};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PropError {
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Atom(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PropError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (token, width) = if c.is_whitespace() {
            i += 1;
            continue;
        } else if rest.starts_with("<->") {
            (Token::Iff, 3)
        } else if rest.starts_with("->") {
            (Token::Implies, 2)
        } else if c == '!' {
            (Token::Not, 1)
        } else if c == '&' {
            (Token::And, 1)
        } else if c == '|' {
            (Token::Or, 1)
        } else if c == '(' {
            (Token::Open, 1)
        } else if c == ')' {
            (Token::Close, 1)
        } else if c.is_alphabetic() || c == '_' {
            let len = chars[i..]
                .iter()
                .take_while(|c| c.is_alphanumeric() || **c == '_')
                .count();
            (Token::Atom(chars[i..i + len].iter().collect()), len)
        } else {
            return Err(PropError::Parse {
                column,
                message: format!("unexpected `{c}`"),
            });
        };
        out.push((column, token));
        i += width;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn error(&self, message: &str) -> PropError {
        PropError::Parse {
            column: self.column(),
            message: message.to_string(),
        }
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<PropFormula, PropError> {
        let lhs = self.implies()?;
        if self.eat(&Token::Iff) {
            return Ok(lhs.iff(self.iff()?));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<PropFormula, PropError> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            return Ok(lhs.implies(self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<PropFormula, PropError> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<PropFormula, PropError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PropFormula, PropError> {
        if self.eat(&Token::Not) {
            return Ok(self.unary()?.not());
        }
        if self.eat(&Token::Open) {
            let inner = self.iff()?;
            if !self.eat(&Token::Close) {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        match self.peek().cloned() {
            Some(Token::Atom(a)) => {
                self.pos += 1;
                Ok(PropFormula::Atom(a))
            }
            _ => Err(self.error("expected an atom, `!` or `(`")),
        }
    }
}

pub fn parse_prop(text: &str) -> Result<PropFormula, PropError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.chars().count() + 1,
    };
    let f = p.iff()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

pub fn parse_schema(text: &str) -> Result<ArgumentForm, PropError> {
    let mut premises = Vec::new();
    let mut conclusion = None;
    let schema_err = |line, message: String| PropError::Schema { line, message };
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| schema_err(number, "expected `premise:` or `conclusion:`".into()))?;
        let f = parse_prop(value).map_err(|e| schema_err(number, e.to_string()))?;
        match key.trim() {
            "premise" => premises.push(f),
            "conclusion" if conclusion.is_none() => conclusion = Some(f),
            "conclusion" => return Err(schema_err(number, "second conclusion".into())),
            other => return Err(schema_err(number, format!("unknown key `{other}`"))),
        }
    }
    let conclusion = conclusion
        .ok_or_else(|| schema_err(text.lines().count().max(1), "missing `conclusion:`".into()))?;
    Ok(ArgumentForm::new(premises, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> PropFormula {
        PropFormula::atom(n)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_prop("P1 -> P2 -> P3").unwrap(),
            a("P1").implies(a("P2").implies(a("P3")))
        );
        assert_eq!(
            parse_prop("!P1 & P2 | P3").unwrap(),
            a("P1").not().and(a("P2")).or(a("P3"))
        );
        assert_eq!(parse_prop("P2 <-> P3").unwrap(), a("P2").iff(a("P3")));
        assert_eq!(
            parse_prop("!(P2 -> P3)").unwrap(),
            a("P2").implies(a("P3")).not()
        );
    }

    #[test]
    fn display_reparses() {
        let f = parse_prop("(P1 -> (P2 -> P3)) & !(P2 -> P3) <-> !P1").unwrap();
        assert_eq!(parse_prop(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_prop(""),
            Err(PropError::Parse { column: 1, .. })
        ));
        assert!(matches!(parse_prop("P1 &"), Err(PropError::Parse { .. })));
        assert!(matches!(parse_prop("(P1"), Err(PropError::Parse { .. })));
        assert!(matches!(
            parse_prop("P1 P2"),
            Err(PropError::Parse { column: 4, .. })
        ));
        assert!(matches!(
            parse_prop("P1 $ P2"),
            Err(PropError::Parse { column: 4, .. })
        ));
    }

    #[test]
    fn schema_file() {
        let s = parse_schema("premise: p -> q\npremise: !q\nconclusion: !p\n").unwrap();
        assert_eq!(s.premises.len(), 2);
        assert!(parse_schema("premise: p\n").is_err());
        assert!(parse_schema("lemma: p\nconclusion: p\n").is_err());
    }
}
