//! Parser for noncommutative polynomial text in a presentation file.
//!
//! The grammar matches the commutative one in [`crate::multipoly`], but
//! products are concatenations of words, so `x3*x1` and `x1*x3` differ.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::multipoly::Symbols;
use crate::scalars::{Rational, Ring};

use super::NcError;

/// Noncommutative polynomial: words in generator indices with coefficients.
pub(crate) type NcPoly<C> = BTreeMap<Vec<usize>, C>;

fn add_into<C: Ring>(acc: &mut NcPoly<C>, w: Vec<usize>, c: C) {
    let v = match acc.remove(&w) {
        Some(old) => old.add_ref(&c),
        None => c,
    };
    if !v.is_zero() {
        acc.insert(w, v);
    }
}

fn mul<C: Ring>(a: &NcPoly<C>, b: &NcPoly<C>) -> NcPoly<C> {
    let mut out = NcPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            add_into(&mut out, w, ca.mul_ref(cb));
        }
    }
    out
}

fn scale<C: Ring>(a: &NcPoly<C>, c: &C) -> NcPoly<C> {
    a.iter().map(|(w, x)| (w.clone(), x.mul_ref(c))).filter(|(_, x)| !x.is_zero()).collect()
}

fn constant<C: Ring>(c: C) -> NcPoly<C> {
    let mut p = NcPoly::new();
    if !c.is_zero() {
        p.insert(Vec::new(), c);
    }
    p
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gens: &'a [String],
    line: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, NcError> {
        Err(NcError::Parse { line: self.line, msg: format!("{} at column {}", msg.into(), self.pos + 1) })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<C: Symbols>(&mut self) -> Result<NcPoly<C>, NcError> {
        let mut acc = self.term()?;
        loop {
            let neg = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                return Ok(acc);
            };
            for (w, c) in self.term::<C>()? {
                add_into(&mut acc, w, if neg { c.neg_ref() } else { c });
            }
        }
    }

    fn term<C: Symbols>(&mut self) -> Result<NcPoly<C>, NcError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = mul(&acc, &self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary::<C>()?;
                let c = match (d.len(), d.get(&Vec::new())) {
                    (1, Some(c)) => c.clone(),
                    (0, _) => return self.err("division by zero"),
                    _ => return self.err("division by a non-constant"),
                };
                acc = scale(&acc, &c.try_inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<C: Symbols>(&mut self) -> Result<NcPoly<C>, NcError> {
        if self.eat(b'-') {
            Ok(scale(&self.unary()?, &C::from_i64(-1)))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power<C: Symbols>(&mut self) -> Result<NcPoly<C>, NcError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let Ok(e) = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default().parse::<u32>() else {
            return self.err("expected a nonnegative integer exponent");
        };
        let mut acc = constant(C::one());
        for _ in 0..e {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom<C: Symbols>(&mut self) -> Result<NcPoly<C>, NcError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").parse().expect("digits");
                Ok(constant(C::from_rational(&Rational::from_big(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(i) = self.gens.iter().position(|g| g == name) {
                    Ok([(vec![i], C::one())].into_iter().collect())
                } else if let Some(c) = C::symbol(name) {
                    Ok(constant(c))
                } else {
                    Err(NcError::UnknownGenerator(name.to_string()))
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `lhs = rhs` (or a bare expression) into `lhs - rhs`.
pub(crate) fn parse_relation<C: Symbols>(text: &str, gens: &[String], line: usize) -> Result<NcPoly<C>, NcError> {
    let (lhs, rhs) = match text.split_once('=') {
        Some((l, r)) => (l, Some(r)),
        None => (text, None),
    };
    let mut out = parse_side(lhs, gens, line)?;
    if let Some(r) = rhs {
        for (w, c) in parse_side::<C>(r, gens, line)? {
            add_into(&mut out, w, c.neg_ref());
        }
    }
    Ok(out)
}

fn parse_side<C: Symbols>(text: &str, gens: &[String], line: usize) -> Result<NcPoly<C>, NcError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, gens, line };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}
