//! Polynomial text syntax.
//!
//! Variables are `x1..xn`, `z1..zm`, `lambda1..lambdam` and `t`; operators
//! `+ - * ^` and parentheses; literals are integers, `p/q` fractions or
//! decimals (read exactly). Multiplication must be written explicitly.

use std::collections::HashMap;

use num_traits::{One, Signed};

use super::mpoly::MPoly;
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Names for an `x` block followed by slack `z` and multiplier `lambda` blocks.
pub fn block_var_names(nx: usize, nz: usize, nlambda: usize) -> Vec<String> {
    let mut v = default_var_names(nx);
    v.extend((1..=nz).map(|i| format!("z{i}")));
    v.extend((1..=nlambda).map(|i| format!("lambda{i}")));
    v
}

pub(crate) fn push_term(out: &mut String, c: &Rational, mono: &str) {
    if out.is_empty() {
        if c.is_negative() {
            out.push('-');
        }
    } else if c.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let a = c.abs();
    if mono.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&format!("{a}*{mono}"));
    }
}

/// Parsed expression tree; variables are still symbolic.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var { name: String, column: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Variable names referenced, with the column of their first occurrence.
    pub fn variables(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<(String, usize)>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var { name, column } => out.push((name.clone(), *column)),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    /// Expands into a polynomial, resolving names through `index`.
    pub fn to_mpoly(&self, nvars: usize, index: &HashMap<String, usize>) -> Result<MPoly> {
        Ok(match self {
            Expr::Num(c) => MPoly::constant(nvars, c.clone()),
            Expr::Var { name, .. } => {
                let i = *index.get(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                MPoly::var(nvars, i)
            }
            Expr::Add(a, b) => &a.to_mpoly(nvars, index)? + &b.to_mpoly(nvars, index)?,
            Expr::Sub(a, b) => &a.to_mpoly(nvars, index)? - &b.to_mpoly(nvars, index)?,
            Expr::Mul(a, b) => &a.to_mpoly(nvars, index)? * &b.to_mpoly(nvars, index)?,
            Expr::Neg(a) => -&a.to_mpoly(nvars, index)?,
            Expr::Pow(a, e) => a.to_mpoly(nvars, index)?.pow(*e),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut k = i + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    i = k;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            toks.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^()".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(perr(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(s)) if s.bytes().all(|b| b.is_ascii_digit()) => {
                    self.pos += 1;
                    let e: u32 = s.parse().map_err(|_| perr(self.line, col, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(perr(self.line, col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let v = parse_rational(&s).map_err(|_| perr(self.line, col, format!("invalid number `{s}`")))?;
                Ok(Expr::Num(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var { name, column: col })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(perr(self.line, self.col(), "expected `)`")),
                }
            }
            Some(t) => Err(perr(self.line, col, format!("unexpected token {t:?}"))),
            None => Err(perr(self.line, col, "unexpected end of input")),
        }
    }
}

/// Parses one expression; `line` is used for error positions.
pub fn parse_expr(text: &str, line: usize) -> Result<Expr> {
    let Lexer { toks } = lex(text, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: text.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(
            line,
            p.col(),
            "expected an operator (implicit multiplication is not allowed)",
        ));
    }
    Ok(e)
}

/// Parses a polynomial in the named variables.
pub fn parse_with_names(text: &str, names: &[String]) -> Result<MPoly> {
    let index: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    parse_expr(text, 1)?.to_mpoly(names.len(), &index)
}

/// Parses a polynomial in `x1..xn`.
pub fn parse_mpoly(text: &str, nvars: usize) -> Result<MPoly> {
    parse_with_names(text, &default_var_names(nvars))
}

pub fn parse_upoly(text: &str) -> Result<super::upoly::UPoly> {
    let p = parse_with_names(text, &["t".to_string()])?;
    Ok(p.to_upoly(0).unwrap_or_default())
}

/// Splits a name like `x12` into its block prefix and 1-based index.
pub fn split_indexed_name(name: &str) -> Option<(&str, usize)> {
    let pos = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(pos);
    let k: usize = digits.parse().ok()?;
    (k >= 1 && !digits.starts_with('0')).then_some((prefix, k))
}
