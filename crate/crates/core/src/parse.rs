//! Concrete syntax.
//!
//! ```text
//! iff     := imp ( "<->" iff )?
//! imp     := or ( "->" imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | "D" coal unary | "C" coal unary | "K" agent unary
//!          | atom | "(" iff ")"
//! coal    := "{" agent ( "," agent )* "}"
//! atom    := [a-z][a-z0-9_]*
//! ```

use alloc::string::{String, ToString};
use core::fmt;

use crate::agents::{Coalition, Universe};
use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownAgent(String),
    EmptyCoalition,
    BadAtom(String),
}

/// A parse failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownAgent(a) => write!(f, "unknown agent {a:?}"),
            ParseErrorKind::EmptyCoalition => write!(f, "empty coalition"),
            ParseErrorKind::BadAtom(a) => {
                write!(f, "{a:?} is not an atom (atoms match [a-z][a-z0-9_]*)")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => alloc::format!("{s:?}"),
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Implies => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Comma => "','".into(),
        }
    }
}

fn lex(text: &str) -> Result<alloc::vec::Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = alloc::vec::Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' | b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b',' => Tok::Comma,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: i,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: alloc::vec::Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    universe: &'a Universe,
}

/// Parses `text` over `universe`, desugaring to the primitive connectives.
pub fn parse(text: &str, universe: &Universe) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        universe,
    };
    let f = p.iff()?;
    if let Some((at, t)) = p.toks.get(p.pos) {
        return Err(ParseError {
            position: *at,
            kind: ParseErrorKind::UnexpectedToken(t.describe()),
        });
    }
    Ok(f)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(at, _)| *at)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((at, t)) => ParseError {
                position: *at,
                kind: ParseErrorKind::UnexpectedToken(t.describe()),
            },
            None => ParseError {
                position: self.end,
                kind: ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let l = self.imp()?;
        if self.eat(&Tok::Iff) {
            let r = self.iff()?;
            return Ok(Formula::and(
                Formula::implies(l.clone(), r.clone()),
                Formula::implies(r, l),
            ));
        }
        Ok(l)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let l = self.or()?;
        if self.eat(&Tok::Implies) {
            let r = self.imp()?;
            return Ok(Formula::implies(l, r));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.and()?;
        while self.eat(&Tok::Or) {
            let r = self.and()?;
            l = Formula::or(l, r);
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut l = self.unary()?;
        while self.eat(&Tok::And) {
            let r = self.unary()?;
            l = Formula::and(l, r);
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.iff()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "D" => {
                        let c = self.coalition()?;
                        Ok(Formula::d(c, self.unary()?))
                    }
                    "C" => {
                        let c = self.coalition()?;
                        Ok(Formula::c(c, self.unary()?))
                    }
                    "K" => {
                        let c = self.agent_name()?;
                        Ok(Formula::d(c, self.unary()?))
                    }
                    _ => atom(&name, at),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn agent_name(&mut self) -> Result<Coalition, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.universe
                    .agent(&name)
                    .map(Coalition::singleton)
                    .ok_or(ParseError {
                        position: at,
                        kind: ParseErrorKind::UnknownAgent(name),
                    })
            }
            _ => Err(self.unexpected()),
        }
    }

    fn coalition(&mut self) -> Result<Coalition, ParseError> {
        let open = self.here();
        self.expect(&Tok::LBrace)?;
        if self.eat(&Tok::RBrace) {
            return Err(ParseError {
                position: open,
                kind: ParseErrorKind::EmptyCoalition,
            });
        }
        let mut c = self.agent_name()?;
        while self.eat(&Tok::Comma) {
            c = c.union(self.agent_name()?);
        }
        self.expect(&Tok::RBrace)?;
        Ok(c)
    }
}

fn atom(name: &str, at: usize) -> Result<Formula, ParseError> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
    if ok {
        Ok(Formula::atom(name))
    } else {
        Err(ParseError {
            position: at,
            kind: ParseErrorKind::BadAtom(name.to_string()),
        })
    }
}
