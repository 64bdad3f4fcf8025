//! Expression language for `algebra eval`.
//!
//! ```text
//! query   := chain ( "<=" chain )?
//! chain   := unary ( ( "^" | "v" | "->" ) unary )*     left associative
//! unary   := "!" unary | primary
//! primary := "(" rational "," rational ")" | "(" query ")"
//! ```
//!
//! `^` is meet, `v` join, `->` implication, `!` pseudo-complement and `<=`
//! the order query. `!` binds tightest and `<=` loosest.

use std::fmt;

use lifetime_core::rational::{parse_rational, Rational};
use lifetime_core::{AlgebraError, Bounds, Lifetime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Lifetime(Lifetime),
    Bool(bool),
}

impl Value {
    pub fn render(&self, decimals: Option<usize>) -> String {
        match (self, decimals) {
            (Value::Lifetime(l), Some(k)) => l.to_decimal_string(k),
            (Value::Lifetime(l), None) => l.to_string(),
            (Value::Bool(b), _) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Malformed or ill-typed input at a byte offset.
    Syntax { pos: usize, message: String },
    /// A literal outside the bounds.
    Algebra(AlgebraError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Syntax { pos, message } => write!(f, "at position {pos}: {message}"),
            EvalError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Meet,
    Join,
    Implies,
    Not,
    Leq,
    Num(Rational),
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Num(r)) => format!("number {r}"),
        Some(t) => {
            let s = match t {
                Tok::Open => "(",
                Tok::Close => ")",
                Tok::Comma => ",",
                Tok::Meet => "^",
                Tok::Join => "v",
                Tok::Implies => "->",
                Tok::Not => "!",
                Tok::Leq => "<=",
                Tok::Num(_) => unreachable!(),
            };
            format!("`{s}`")
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, EvalError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            b',' => Some(Tok::Comma),
            b'^' => Some(Tok::Meet),
            b'v' => Some(Tok::Join),
            b'!' => Some(Tok::Not),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            i += 1;
        } else if src[i..].starts_with("->") {
            out.push((i, Tok::Implies));
            i += 2;
        } else if src[i..].starts_with("<=") {
            out.push((i, Tok::Leq));
            i += 2;
        } else if c.is_ascii_digit() || c == b'-' {
            let start = i;
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                i += 1;
            }
            let value = parse_rational(&src[start..i]).map_err(|e| EvalError::Syntax {
                pos: start,
                message: e.to_string(),
            })?;
            out.push((start, Tok::Num(value)));
        } else {
            return Err(EvalError::Syntax {
                pos: i,
                message: format!("unexpected character `{}`", src[i..].chars().next().unwrap()),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    bounds: &'a Bounds,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, EvalError> {
        Err(EvalError::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), EvalError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(Some(&want)), describe(self.peek())))
        }
    }

    fn lifetime(&self, v: Value, pos: usize) -> Result<Lifetime, EvalError> {
        match v {
            Value::Lifetime(l) => Ok(l),
            Value::Bool(_) => Err(EvalError::Syntax {
                pos,
                message: "expected a lifetime, found a boolean".into(),
            }),
        }
    }

    fn query(&mut self) -> Result<Value, EvalError> {
        let start = self.pos();
        let left = self.chain()?;
        if self.peek() != Some(&Tok::Leq) {
            return Ok(left);
        }
        self.at += 1;
        let right_pos = self.pos();
        let right = self.chain()?;
        let a = self.lifetime(left, start)?;
        let b = self.lifetime(right, right_pos)?;
        Ok(Value::Bool(a.leq(&b).map_err(EvalError::Algebra)?))
    }

    fn chain(&mut self) -> Result<Value, EvalError> {
        let start = self.pos();
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(t @ (Tok::Meet | Tok::Join | Tok::Implies)) => t.clone(),
                _ => return Ok(acc),
            };
            self.at += 1;
            let rhs_pos = self.pos();
            let rhs = self.unary()?;
            let a = self.lifetime(acc, start)?;
            let b = self.lifetime(rhs, rhs_pos)?;
            let r = match op {
                Tok::Meet => a.meet(&b),
                Tok::Join => a.join(&b),
                _ => a.implies(&b),
            };
            acc = Value::Lifetime(r.map_err(EvalError::Algebra)?);
        }
    }

    fn unary(&mut self) -> Result<Value, EvalError> {
        if self.peek() == Some(&Tok::Not) {
            self.at += 1;
            let pos = self.pos();
            let v = self.unary()?;
            return Ok(Value::Lifetime(self.lifetime(v, pos)?.pseudo_complement()));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Value, EvalError> {
        if self.peek() != Some(&Tok::Open) {
            return self.error(format!("expected `(`, found {}", describe(self.peek())));
        }
        let is_pair = matches!(self.peek_at(1), Some(Tok::Num(_)))
            && matches!(self.peek_at(2), Some(Tok::Comma));
        self.at += 1;
        if !is_pair {
            let v = self.query()?;
            self.expect(Tok::Close)?;
            return Ok(v);
        }
        let Some(Tok::Num(x1)) = self.peek().cloned() else { unreachable!() };
        self.at += 2;
        let Some(Tok::Num(x2)) = self.peek().cloned() else {
            return self.error(format!("expected a number, found {}", describe(self.peek())));
        };
        self.at += 1;
        self.expect(Tok::Close)?;
        self.bounds
            .lifetime(x1, x2)
            .map(Value::Lifetime)
            .map_err(EvalError::Algebra)
    }
}

pub fn evaluate(src: &str, bounds: &Bounds) -> Result<Value, EvalError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        bounds,
    };
    let v = p.query()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(v)
}
