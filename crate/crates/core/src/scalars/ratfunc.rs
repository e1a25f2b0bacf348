use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{Field, Rational, Ring, ScalarError, Specialize, UniPoly};

/// Name of the parameter in text forms.
pub const ALPHA: &str = "alpha";

/// Element of Q(alpha): a reduced quotient of polynomials in `alpha` with
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly<Rational>,
    den: UniPoly<Rational>,
}

/// Rejects parameter values with `alpha*(1 - alpha^2) = 0`.
pub fn check_generic(value: &Rational) -> Result<(), ScalarError> {
    let one = Rational::one();
    let disc = value.mul_ref(&one.sub_ref(&value.mul_ref(value)));
    if disc.is_zero() {
        Err(ScalarError::NonGeneric(value.to_string()))
    } else {
        Ok(())
    }
}

impl RatFunc {
    pub fn new(num: UniPoly<Rational>, den: UniPoly<Rational>) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(num: UniPoly<Rational>) -> Self {
        RatFunc { num, den: UniPoly::one() }
    }

    /// The parameter itself.
    pub fn alpha() -> Self {
        Self::from_poly(UniPoly::monomial(Rational::one(), 1))
    }

    /// Polynomial `sum c_k alpha^k` from integer coefficients, constant term first.
    pub fn from_coeffs(c: &[i64]) -> Self {
        Self::from_poly(UniPoly::new(c.iter().map(|&x| Rational::from(x)).collect()))
    }

    pub fn numer(&self) -> &UniPoly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<Rational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value if this element does not depend on `alpha`.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    fn reduce(num: UniPoly<Rational>, den: UniPoly<Rational>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.lead().expect("nonzero denominator").clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.inv();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Exact square root in Q(alpha), if one exists.
    pub fn sqrt_exact(&self) -> Option<RatFunc> {
        // Denominator is monic, so its root is monic as well; the numerator
        // carries the rational square class.
        let n = self.num.sqrt_exact(|c| c.sqrt_exact())?;
        let d = self.den.sqrt_exact(|c| c.sqrt_exact())?;
        Some(Self::reduce(n, d))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &UniPoly<Rational>| p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.is_one() {
            return self.num.fmt_in(ALPHA, f);
        }
        if wrap(&self.num) {
            write!(f, "(")?;
            self.num.fmt_in(ALPHA, f)?;
            write!(f, ")")?;
        } else {
            self.num.fmt_in(ALPHA, f)?;
        }
        write!(f, "/")?;
        if wrap(&self.den) || self.den.degree() == Some(0) {
            write!(f, "(")?;
            self.den.fmt_in(ALPHA, f)?;
            write!(f, ")")
        } else {
            self.den.fmt_in(ALPHA, f)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Rational> for RatFunc {
    fn from(q: Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(q))
    }
}

impl FromStr for RatFunc {
    type Err = ScalarError;

    /// Accepts the polynomial grammar in the single variable `alpha`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::multipoly::parse_scalar::<RatFunc>(s)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    fn one() -> Self {
        RatFunc { num: UniPoly::one(), den: UniPoly::one() }
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc::from(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: self.num.add(&rhs.num), den: UniPoly::one() };
        }
        if self.den == rhs.den {
            return Self::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: self.num.mul(&rhs.num), den: UniPoly::one() };
        }
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg_ref(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl Field for RatFunc {}

impl Specialize for RatFunc {
    type Output = Rational;

    fn specialize(&self, alpha: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(alpha);
        if d.is_zero() {
            return Err(ScalarError::Pole(alpha.to_string()));
        }
        Ok(self.num.eval(alpha).mul_ref(&d.inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::specialize_alpha;

    #[test]
    fn canonical_form_after_reduction() {
        // (alpha^2 - 1)/(alpha + 1) = alpha - 1
        let x = RatFunc::from_coeffs(&[-1, 0, 1]).mul_ref(&RatFunc::from_coeffs(&[1, 1]).inv());
        assert_eq!(x, RatFunc::from_coeffs(&[-1, 1]));
        assert!(x.is_polynomial());
        let y = RatFunc::from_coeffs(&[0, 2]).div_ref(&RatFunc::from_coeffs(&[4, 2]));
        assert_eq!(y.to_string(), "alpha/(alpha + 2)");
        assert!(y.sub_ref(&y).is_zero());
    }

    #[test]
    fn specialization_examples() {
        let x = RatFunc::from_coeffs(&[-1, 0, 1]).div_ref(&RatFunc::from_coeffs(&[1, 1]));
        assert_eq!(specialize_alpha(&x, &Rational::from(3)).unwrap(), Rational::from(2));
        let d2 = RatFunc::from_coeffs(&[1, 0, -1]);
        assert_eq!(specialize_alpha(&d2, &Rational::from(3)).unwrap(), Rational::from(-8));
        assert_eq!(
            specialize_alpha(&d2, &Rational::from(1)),
            Err(ScalarError::NonGeneric("1".into()))
        );
        let pole = RatFunc::one().div_ref(&RatFunc::from_coeffs(&[-2, 1]));
        assert!(matches!(specialize_alpha(&pole, &Rational::from(2)), Err(ScalarError::Pole(_))));
    }

    #[test]
    fn square_roots() {
        let s = RatFunc::from_coeffs(&[1, 2, 1]).div_ref(&RatFunc::from_coeffs(&[0, 0, 4]));
        let r = s.sqrt_exact().unwrap();
        assert_eq!(r.mul_ref(&r), s);
        assert!(RatFunc::alpha().sqrt_exact().is_none());
    }
}
