//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula    := quantified | iff
//! quantified := ("forall" | "exists") IDENT formula
//! iff        := imp ("<->" iff)?
//! imp        := or ("->" imp)?
//! or         := and ("|" or)?
//! and        := neg ("&" and)?
//! neg        := "~" neg | "(" formula ")" | quantified | atom
//! atom       := IDENT ("in" | "=") IDENT
//! ```
//!
//! A quantifier body extends as far right as possible. `quantified` is
//! also accepted in operand position, so `~ exists z (...)` parses.

use super::{Formula, Term};
use std::fmt;
use thiserror::Error;

const KEYWORDS: [&str; 3] = ["in", "forall", "exists"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// A syntax error, positioned at 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    In,
    Forall,
    Exists,
    Eq,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::In => f.write_str("`in`"),
            Tok::Forall => f.write_str("`forall`"),
            Tok::Exists => f.write_str("`exists`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let tok = match word.as_str() {
                "in" => Tok::In,
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word),
            };
            (tok, j - i)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else {
            let tok = match c {
                '=' => Tok::Eq,
                '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        line,
                        column,
                        expected: vec!["a formula token".into()],
                        found: format!("character `{c}`"),
                    })
                }
            };
            (tok, 1)
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Open parenthesis nesting; a `)` is then a legal continuation.
    depth: usize,
}

/// Parses a formula.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
        depth: 0,
    };
    let f = p.formula()?;
    if p.peek() != &Tok::End {
        return Err(p.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        let mut expected: Vec<String> = expected.iter().map(|e| e.to_string()).collect();
        if self.depth > 0 && expected.iter().any(|e| e == "end of input") {
            expected.retain(|e| e != "end of input");
            expected.push("`)`".into());
        }
        ParseError {
            line: s.line,
            column: s.column,
            expected,
            found: s.tok.to_string(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => self.iff(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let q = self.bump();
        let var = match self.peek() {
            Tok::Ident(v) => v.clone(),
            _ => return Err(self.error(&["identifier"])),
        };
        self.bump();
        let body = self.formula()?;
        Ok(match q {
            Tok::Forall => Formula::forall(var, body),
            _ => Formula::exists(var, body),
        })
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.peek() == &Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == &Tok::Implies {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and()?;
        if self.peek() == &Tok::Or {
            self.bump();
            let rhs = self.or()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.neg()?;
        if self.peek() == &Tok::And {
            self.bump();
            let rhs = self.and()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.neg()?))
            }
            Tok::LParen => {
                self.bump();
                self.depth += 1;
                let f = self.formula()?;
                if self.peek() != &Tok::RParen {
                    return Err(self.error(&["`&`", "`|`", "`->`", "`<->`", "`)`"]));
                }
                self.bump();
                self.depth -= 1;
                Ok(f)
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            Tok::Ident(_) => self.atom(),
            _ => Err(self.error(&["`~`", "`(`", "`forall`", "`exists`", "identifier"])),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let Tok::Ident(lhs) = self.bump() else {
            unreachable!("atom starts with an identifier")
        };
        let op = self.peek().clone();
        if op != Tok::In && op != Tok::Eq {
            return Err(self.error(&["`in`", "`=`"]));
        }
        self.bump();
        let rhs = match self.peek() {
            Tok::Ident(r) => r.clone(),
            _ => return Err(self.error(&["identifier"])),
        };
        self.bump();
        let (l, r) = (Term::Var(lhs), Term::Var(rhs));
        Ok(if op == Tok::In {
            Formula::Member(l, r)
        } else {
            Formula::Equal(l, r)
        })
    }
}
