//! Polynomial expression parser.
//!
//! Grammar (no implicit multiplication):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | identifier | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/4*x` is fine and
//! `x/y` is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Polynomial, Rational, VariableContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str, line0: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (line0, col0);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            column += 1;
            out.push(Token { tok, line: l, column: col });
        } else if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l, column: col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
        } else {
            return Err(ParseError { line: l, column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ctx: &'a Arc<VariableContext>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let slash = self.bump();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(self.err(&slash, "division by a non-constant expression"));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(self.err(&slash, "division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let t = self.peek().clone();
                    return Err(self.err(&t, format!("expected an operator before {} (implicit multiplication is not allowed)", describe(&t.tok))));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let e = match &t.tok {
            Tok::Int(n) => u32::try_from(n).map_err(|_| self.err(&t, "exponent too large"))?,
            other => return Err(self.err(&t, format!("expected a non-negative integer exponent, found {}", describe(other)))),
        };
        if self.peek().tok == Tok::Caret {
            let t = self.peek().clone();
            return Err(self.err(&t, "chained exponents are ambiguous; use parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.ctx, Rational::from_integer(n))),
            Tok::Ident(ref name) => {
                Polynomial::var(self.ctx, name).map_err(|_| self.err(&t, format!("unknown variable `{name}`")))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.err(&close, format!("expected `)`, found {}", describe(&close.tok))));
                }
                Ok(inner)
            }
            ref other => Err(self.err(&t, format!("expected a number, variable or `(`, found {}", describe(other)))),
        }
    }
}

/// Parses `text` as a polynomial over `ctx`.
pub fn parse_polynomial(text: &str, ctx: &Arc<VariableContext>) -> Result<Polynomial, ParseError> {
    parse_polynomial_at(text, ctx, 1, 1)
}

/// Like [`parse_polynomial`], reporting positions relative to `line`/`column`.
pub fn parse_polynomial_at(text: &str, ctx: &Arc<VariableContext>, line: usize, column: usize) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text, line, column)?;
    let mut p = Parser { toks, pos: 0, ctx };
    if p.peek().tok == Tok::End {
        let t = p.peek().clone();
        return Err(p.err(&t, "empty expression"));
    }
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.err(&t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(out)
}
