use std::fmt;

use super::Field;

/// Dense univariate polynomial over a field, coefficients stored from the
/// constant term upwards with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// The monomial `c * t^n`.
    pub fn monomial(c: K, n: usize) -> Self {
        let mut v = vec![K::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&K::from_i64(i as i64)))
                .collect(),
        )
    }

    /// The product of the distinct monic irreducible factors (characteristic 0).
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(K::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Exact square root up to sign, if one exists.
    ///
    /// The candidate root is built by matching coefficients from the top
    /// down, then confirmed by squaring. `sqrt_lead` extracts the square root
    /// of the leading coefficient.
    pub fn sqrt_exact(&self, sqrt_lead: impl Fn(&K) -> Option<K>) -> Option<Self> {
        let n = match self.degree() {
            None => return Some(Self::zero()),
            Some(n) => n,
        };
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let r_lead = sqrt_lead(&self.coeffs[n])?;
        let two_lead_inv = r_lead.add_ref(&r_lead).inv();
        let mut root = vec![K::zero(); m + 1];
        root[m] = r_lead;
        for k in (0..m).rev() {
            // coefficient of t^(m + k) in root^2 determines root[k]
            let mut acc = self.coeffs[m + k].clone();
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc = acc.sub_ref(&root[i].mul_ref(&root[j]));
                }
            }
            root[k] = acc.mul_ref(&two_lead_inv);
        }
        let root = Self::new(root);
        if &root.mul(&root) == self {
            Some(root)
        } else {
            None
        }
    }

    pub fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = if i == 0 {
                c.to_string()
            } else if c.is_one() {
                String::new()
            } else if c.neg_ref().is_one() {
                "-".to_string()
            } else if c.is_atomic() {
                format!("{c}*")
            } else {
                format!("({c})*")
            };
            if i > 0 {
                s.push_str(var);
                if i > 1 {
                    s.push_str(&format!("^{i}"));
                }
            }
            if first {
                write!(f, "{s}")?;
                first = false;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in("t", f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_and_sqrt() {
        let f = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[-2, 1]));
        assert_eq!(f.squarefree_part(), p(&[1, 1]).mul(&p(&[-2, 1])));
        let sq = p(&[3, 2, 1]).mul(&p(&[3, 2, 1]));
        let r = sq.sqrt_exact(|c| c.sqrt_exact()).unwrap();
        assert_eq!(r.mul(&r), sq);
        assert!(p(&[1, 0, 2]).sqrt_exact(|c| c.sqrt_exact()).is_none());
    }
}
