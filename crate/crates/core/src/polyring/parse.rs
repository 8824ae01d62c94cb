//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := NUMBER | VAR | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Variables are `x1..xM`, `y1..yK`; `x` and `y` are accepted when the block
//! has one variable. Division and `sqrt` take constant arguments only.
//! Juxtaposition (`2x`, `x y`) is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Coeff, Exact, ExactPoly, FloatPoly, Layout, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            let int_part = &s[start..i];
            let mut frac = "";
            if i < b.len() && b[i] == b'.' {
                i += 1;
                let fs = i;
                while i < b.len() && (b[i] as char).is_ascii_digit() {
                    i += 1;
                }
                frac = &s[fs..i];
            }
            if int_part.is_empty() && frac.is_empty() {
                return Err(Error::Parse {
                    pos: start,
                    msg: "malformed number".into(),
                });
            }
            let digits = format!("{int_part}{frac}");
            let num: BigInt = digits.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "malformed number".into(),
            })?;
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            out.push((start, Tok::Num(BigRational::new(num, den))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    layout: Layout,
    src: &'a str,
    radicand: u64,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.at(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<ExactPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = constant_of(&d)
                    .ok_or(())
                    .or_else(|_| self.err("division by a non-constant"))?;
                if c.is_zero() {
                    return self.err("division by zero");
                }
                acc = acc.scale(&c.inv());
            } else {
                match self.peek() {
                    Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                        return self.err("implicit multiplication is not allowed; use '*'")
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<ExactPoly> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ExactPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Num(r)) if r.is_integer() => r.to_integer(),
                _ => return self.err("exponent must be a nonnegative integer"),
            };
            let e: u32 = e.try_into().or_else(|_| self.err("exponent out of range"))?;
            self.pos += 1;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ExactPoly> {
        let l = self.layout;
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Polynomial::constant(l, Exact::from_rational(r)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if name == "sqrt" {
                    self.pos += 1;
                    self.expect('(')?;
                    let start = self.pos;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    let q = constant_of(&arg).and_then(|c| c.as_rational().cloned());
                    let Some(q) = q else {
                        self.pos = start;
                        return self.err("sqrt takes a rational constant");
                    };
                    let v = Exact::sqrt_rational(&q)
                        .ok_or(())
                        .or_else(|_| self.err("radicand too large"))?;
                    if v.radicand() != 0 {
                        if self.radicand != 0 && self.radicand != v.radicand() {
                            return self.err("square roots of different radicands in one expression");
                        }
                        self.radicand = v.radicand();
                    }
                    return Ok(Polynomial::constant(l, v));
                }
                self.pos += 1;
                if name == "i" {
                    return Ok(Polynomial::constant(l, Exact::i()));
                }
                match var_index(&name, &l) {
                    Some(v) => Ok(Polynomial::var(l, v)),
                    None => {
                        self.pos -= 1;
                        self.err(format!("unknown variable '{name}'"))
                    }
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant_of(p: &ExactPoly) -> Option<Exact> {
    if p.is_zero() {
        return Some(Exact::zero());
    }
    if p.is_constant() {
        Some(p.terms()[0].coeff.clone())
    } else {
        None
    }
}

fn var_index(name: &str, l: &Layout) -> Option<usize> {
    if name == "x" && l.nx == 1 {
        return Some(0);
    }
    if name == "y" && l.ny == 1 {
        return Some(l.nx);
    }
    let (block, rest) = name.split_at(1);
    let k: usize = rest.parse().ok()?;
    if k == 0 || rest.starts_with('0') {
        return None;
    }
    match block {
        "x" if k <= l.nx => Some(k - 1),
        "y" if k <= l.ny => Some(l.nx + k - 1),
        _ => None,
    }
}

/// Parses an exact polynomial over `layout`.
pub fn parse_exact(s: &str, layout: Layout) -> Result<ExactPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        layout,
        src: s,
        radicand: 0,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses into double-precision coefficients.
pub fn parse_float(s: &str, layout: Layout) -> Result<FloatPoly> {
    Ok(parse_exact(s, layout)?.map_coeffs(|c| c.to_complex()))
}
