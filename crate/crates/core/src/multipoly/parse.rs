//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers resolve first to variables, then to named scalars of the
//! coefficient ring (`alpha` for Q(alpha)). Division is only by nonzero
//! constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{MPoly, Monomial, PolyError, VarSet};
use crate::scalars::{Field, RatFunc, Rational, Ring, ScalarError, TowerElem, ALPHA};

/// Coefficient rings with named constants usable in text.
pub trait Symbols: Ring {
    fn symbol(name: &str) -> Option<Self>;
}

impl Symbols for Rational {
    fn symbol(_: &str) -> Option<Self> {
        None
    }
}

impl Symbols for RatFunc {
    fn symbol(name: &str) -> Option<Self> {
        (name == ALPHA).then(RatFunc::alpha)
    }
}

impl<K: Field + Symbols> Symbols for TowerElem<K> {
    fn symbol(name: &str) -> Option<Self> {
        K::symbol(name).map(TowerElem::from_base)
    }
}

struct Parser<'a, C> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarSet>,
    _c: std::marker::PhantomData<C>,
}

impl<'a, C: Symbols> Parser<'a, C> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
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

    fn expr(&mut self) -> Result<MPoly<C>, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<C>, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = match d.terms().len() {
                    1 if d.terms().contains_key(&Monomial::one()) => d.coeff(&Monomial::one()),
                    0 => return Err(PolyError::Scalar(ScalarError::DivisionByZero)),
                    _ => return Err(PolyError::Parse { pos: at, msg: "division by a non-constant".into() }),
                };
                acc = acc.scale(&c.try_inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly<C>, PolyError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MPoly<C>, PolyError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
            match digits.parse::<u32>() {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly<C>, PolyError> {
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
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: BigInt = digits.parse().expect("digit string");
                Ok(MPoly::constant(self.vars, C::from_rational(&Rational::from_big(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                if let Some(i) = self.vars.index(name) {
                    Ok(MPoly::var(self.vars, i))
                } else if let Some(c) = C::symbol(name) {
                    Ok(MPoly::constant(self.vars, c))
                } else {
                    self.pos = start;
                    Err(PolyError::UnknownVariable(name.to_string()))
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl<C: Symbols> MPoly<C> {
    /// Parse text in the canonical grammar over the variables `vars`.
    pub fn parse(s: &str, vars: &Arc<VarSet>) -> Result<Self, PolyError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, vars, _c: std::marker::PhantomData };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

/// Parse a scalar (a polynomial expression with no variables).
pub fn parse_scalar<C: Symbols>(s: &str) -> Result<C, ScalarError> {
    let vars = VarSet::new::<&str>(&[]).expect("empty variable set");
    match MPoly::<C>::parse(s, &vars) {
        Ok(p) => Ok(p.coeff(&Monomial::one())),
        Err(PolyError::Scalar(e)) => Err(e),
        Err(_) => Err(ScalarError::Parse(s.to_string())),
    }
}
