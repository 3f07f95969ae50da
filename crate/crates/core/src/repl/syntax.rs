//! Prolog-style query syntax.
//!
//! ```text
//! query := disj "."
//! disj  := conj { ";" conj }
//! conj  := atom { "," atom }
//! atom  := NAME [ "(" term { "," term } ")" ] | "\+" atom | "(" disj ")"
//! term  := VARIABLE | "_" | INTEGER | list
//! list  := "[" [ term { "," term } [ "|" term ] ] "]"
//! ```
//!
//! Variables start with an uppercase letter, names with a lowercase one.
//! Each `_` is a distinct anonymous variable.

use std::fmt;

use thiserror::Error;

/// Integer literals are expanded to Peano terms, so keep them small.
pub const MAX_INT_LITERAL: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceTerm {
    Var {
        name: String,
        column: usize,
    },
    /// An occurrence of `_`, given a hidden unique name.
    Wildcard {
        name: String,
        column: usize,
    },
    Int {
        value: u64,
        column: usize,
    },
    List {
        items: Vec<SurfaceTerm>,
        tail: Option<Box<SurfaceTerm>>,
        column: usize,
    },
}

impl SurfaceTerm {
    pub fn column(&self) -> usize {
        match self {
            SurfaceTerm::Var { column, .. }
            | SurfaceTerm::Wildcard { column, .. }
            | SurfaceTerm::Int { column, .. }
            | SurfaceTerm::List { column, .. } => *column,
        }
    }
}

impl fmt::Display for SurfaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceTerm::Var { name, .. } => f.write_str(name),
            SurfaceTerm::Wildcard { .. } => f.write_str("_"),
            SurfaceTerm::Int { value, .. } => write!(f, "{value}"),
            SurfaceTerm::List { items, tail, .. } => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                if let Some(t) = tail {
                    write!(f, " | {t}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryExpr {
    Call {
        name: String,
        args: Vec<SurfaceTerm>,
        column: usize,
    },
    Conj(Box<QueryExpr>, Box<QueryExpr>),
    Disj(Box<QueryExpr>, Box<QueryExpr>),
    Not(Box<QueryExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Variable(String),
    Wildcard,
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Pipe,
    Dot,
    Not,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) | Tok::Variable(n) => write!(f, "'{n}'"),
            Tok::Wildcard => f.write_str("'_'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semicolon => f.write_str("';'"),
            Tok::Pipe => f.write_str("'|'"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Not => f.write_str("'\\+'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semicolon),
            '|' => Some(Tok::Pipe),
            '.' => Some(Tok::Dot),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, column));
            i += 1;
        } else if c == '\\' {
            if chars.get(i + 1) == Some(&'+') {
                out.push((Tok::Not, column));
                i += 2;
            } else {
                return Err(ParseError {
                    column,
                    message: "expected '\\+'".into(),
                });
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text
                .parse::<u64>()
                .ok()
                .filter(|v| *v <= MAX_INT_LITERAL)
                .ok_or_else(|| ParseError {
                    column,
                    message: format!("integer literal {text} exceeds {MAX_INT_LITERAL}"),
                })?;
            out.push((Tok::Int(value), column));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if word == "_" {
                Tok::Wildcard
            } else if c == '_' {
                return Err(ParseError {
                    column,
                    message: format!("names starting with '_' are reserved: {word}"),
                });
            } else if c.is_uppercase() {
                Tok::Variable(word)
            } else {
                Tok::Name(word)
            };
            out.push((tok, column));
        } else {
            return Err(ParseError {
                column,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    wildcards: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(expected)
        }
    }

    fn query(&mut self) -> Result<QueryExpr, ParseError> {
        let q = self.disj()?;
        self.expect(Tok::Dot, "',', ';' or '.'")?;
        if *self.peek() != Tok::End {
            return self.unexpected("end of input after '.'");
        }
        Ok(q)
    }

    fn disj(&mut self) -> Result<QueryExpr, ParseError> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Semicolon {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(fold_right(parts, QueryExpr::Disj))
    }

    fn conj(&mut self) -> Result<QueryExpr, ParseError> {
        let mut parts = vec![self.atom()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            parts.push(self.atom()?);
        }
        Ok(fold_right(parts, QueryExpr::Conj))
    }

    fn atom(&mut self) -> Result<QueryExpr, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(QueryExpr::Not(Box::new(self.atom()?)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.disj()?;
                self.expect(Tok::RParen, "',', ';' or ')'")?;
                Ok(inner)
            }
            Tok::Name(name) => {
                let (_, column) = self.bump();
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    args.push(self.term()?);
                    loop {
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                                args.push(self.term()?);
                            }
                            Tok::RParen => {
                                self.bump();
                                break;
                            }
                            _ => return self.unexpected("',' or ')'"),
                        }
                    }
                }
                Ok(QueryExpr::Call { name, args, column })
            }
            _ => self.unexpected("a predicate call"),
        }
    }

    fn term(&mut self) -> Result<SurfaceTerm, ParseError> {
        let column = self.column();
        match self.peek().clone() {
            Tok::Variable(name) => {
                self.bump();
                Ok(SurfaceTerm::Var { name, column })
            }
            Tok::Wildcard => {
                self.bump();
                let name = format!("_G{}", self.wildcards);
                self.wildcards += 1;
                Ok(SurfaceTerm::Wildcard { name, column })
            }
            Tok::Int(value) => {
                self.bump();
                Ok(SurfaceTerm::Int { value, column })
            }
            Tok::LBracket => {
                self.bump();
                let mut items = Vec::new();
                let mut tail = None;
                if *self.peek() == Tok::RBracket {
                    self.bump();
                    return Ok(SurfaceTerm::List {
                        items,
                        tail,
                        column,
                    });
                }
                items.push(self.term()?);
                loop {
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                            items.push(self.term()?);
                        }
                        Tok::Pipe => {
                            self.bump();
                            tail = Some(Box::new(self.term()?));
                            self.expect(Tok::RBracket, "']'")?;
                            break;
                        }
                        Tok::RBracket => {
                            self.bump();
                            break;
                        }
                        _ => return self.unexpected("',', '|' or ']'"),
                    }
                }
                Ok(SurfaceTerm::List {
                    items,
                    tail,
                    column,
                })
            }
            _ => self.unexpected("a term"),
        }
    }
}

fn fold_right(
    parts: Vec<QueryExpr>,
    join: fn(Box<QueryExpr>, Box<QueryExpr>) -> QueryExpr,
) -> QueryExpr {
    let mut iter = parts.into_iter().rev();
    let last = iter.next().expect("at least one operand");
    iter.fold(last, |acc, e| join(Box::new(e), Box::new(acc)))
}

/// Parses one query, including the terminating `.`.
pub fn parse(input: &str) -> Result<QueryExpr, ParseError> {
    let toks = tokenize(input)?;
    Parser {
        toks,
        pos: 0,
        wildcards: 0,
    }
    .query()
}

/// Parses a single term; used for reading printed answers back.
pub fn parse_term(input: &str) -> Result<SurfaceTerm, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        wildcards: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return p.unexpected("end of input");
    }
    Ok(t)
}
