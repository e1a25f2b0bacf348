//! Exact coefficient arithmetic.
//!
//! Three layers are provided: the rationals [`Rational`], the rational
//! function field [`RatFunc`] in the parameter `alpha`, and [`TowerElem`],
//! elements of a ring obtained from either of them by adjoining a sequence
//! of square roots.

mod ratfunc;
mod rational;
mod tower;
mod unipoly;

use std::fmt;

pub use ratfunc::{check_generic, RatFunc, ALPHA};
pub use rational::Rational;
pub use tower::{TowerElem, TowerRing};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor in the tower ring: {0}")]
    ZeroDivisor(String),
    #[error("denominator vanishes at alpha = {0}")]
    Pole(String),
    #[error("alpha = {0} is not generic: alpha*(1 - alpha^2) = 0")]
    NonGeneric(String),
    #[error("generator name `{0}` already present in the tower")]
    NameCollision(String),
    #[error("elements belong to incompatible tower rings")]
    IncompatibleRings,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// A commutative ring containing the rationals.
///
/// Every coefficient type in this crate is a Q-algebra, so `from_rational`
/// is part of the contract. `try_inv` returns an error for non-units.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Result<Self, ScalarError>;

    /// True when the text form is a single factor and needs no parentheses
    /// inside a product (`3`, `-1/2`, `alpha`, `i*a`).
    fn is_atomic(&self) -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    fn is_unit(&self) -> bool {
        self.try_inv().is_ok()
    }
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv())
    }
}

/// Rings whose elements can be evaluated at a rational value of `alpha`.
pub trait Specialize: Ring {
    type Output: Ring;

    fn specialize(&self, alpha: &Rational) -> Result<Self::Output, ScalarError>;
}

/// Homomorphic image of `x` under `alpha -> value`.
///
/// Rejects values with `value*(1 - value^2) = 0` before evaluating.
pub fn specialize_alpha<S: Specialize>(x: &S, value: &Rational) -> Result<S::Output, ScalarError> {
    check_generic(value)?;
    x.specialize(value)
}
