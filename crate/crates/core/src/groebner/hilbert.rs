use serde::Serialize;

use crate::multipoly::{Monomial, MAX_VARS};
use crate::scalars::{Field, Rational, Ring};

/// Dimension, degree and Hilbert polynomial of a projective scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// Projective dimension; -1 for the empty scheme.
    pub dimension: i64,
    pub degree: i64,
    /// Coefficients of the Hilbert polynomial in `s`, constant term first.
    pub hilbert_polynomial: Vec<Rational>,
    /// Numerator `Q(t)` of `HS(t) = Q(t) / (1 - t)^(dimension + 1)`.
    pub numerator: Vec<i64>,
}

impl HilbertData {
    /// Hilbert data of `S / (monomials)` with `S` a polynomial ring in
    /// `num_vars` variables.
    pub fn from_leading_monomials(monomials: &[Monomial], num_vars: usize) -> Self {
        let mut num = hilbert_numerator(monomials, num_vars);
        if num.iter().all(|c| *c == 0) {
            return HilbertData { dimension: -1, degree: 0, hilbert_polynomial: Vec::new(), numerator: Vec::new() };
        }
        // cancel factors of (1 - t)
        let mut k = num_vars as i64;
        while k > 0 && num.iter().sum::<i128>() == 0 {
            num = div_one_minus_t(&num);
            k -= 1;
        }
        let d = k - 1;
        let degree = num.iter().sum::<i128>() as i64;
        let hp = if d < 0 { Vec::new() } else { hilbert_polynomial(&num, d as usize) };
        HilbertData { dimension: d, degree, hilbert_polynomial: hp, numerator: num.iter().map(|&c| c as i64).collect() }
    }

    /// Value of the Hilbert polynomial at `s`.
    pub fn eval(&self, s: i64) -> Rational {
        let x = Rational::from(s);
        self.hilbert_polynomial.iter().rev().fold(Rational::zero(), |acc, c| acc.mul_ref(&x).add_ref(c))
    }
}

fn div_one_minus_t(p: &[i128]) -> Vec<i128> {
    // q(t)(1 - t) = p(t)  =>  q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    while q.last() == Some(&0) && q.len() > 1 {
        q.pop();
    }
    q
}

/// `sum_i q_i * binom(s - i + d, d)` expanded as a polynomial in `s`.
fn hilbert_polynomial(q: &[i128], d: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); d + 1];
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        // binom(s - i + d, d) = prod_{j=1..d} (s - i + j) / d!
        let mut poly = vec![Rational::one()];
        for j in 1..=d {
            let shift = Rational::from(j as i64 - i as i64);
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] = next[k].add_ref(&c.mul_ref(&shift));
                next[k + 1] = next[k + 1].add_ref(c);
            }
            poly = next;
        }
        let fact: i64 = (1..=d as i64).product();
        let scale = Rational::from(qi as i64).div_ref(&Rational::from(fact));
        for (k, c) in poly.iter().enumerate() {
            out[k] = out[k].add_ref(&c.mul_ref(&scale));
        }
    }
    out
}

/// Numerator `N(t)` with `HS(S/I)(t) = N(t) / (1 - t)^n`, constant term
/// first, for the monomial ideal `I` generated by `monomials`.
///
/// Recursion on a pivot variable `x`: `N(I) = N(I + (x)) + t * N(I : x)`.
pub fn hilbert_numerator(monomials: &[Monomial], num_vars: usize) -> Vec<i128> {
    assert!(num_vars <= MAX_VARS);
    let gens = minimalize(monomials.to_vec());
    numerator_rec(gens)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn add_poly(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, c) in b.iter().enumerate() {
        a[k + shift] += c;
    }
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i128> {
    // base case: pairwise coprime generators => product of (1 - t^deg)
    let pivot = (0..MAX_VARS).max_by_key(|&v| gens.iter().filter(|m| m.exp(v) > 0).count());
    let shared = pivot.map_or(0, |v| gens.iter().filter(|m| m.exp(v) > 0).count());
    if shared <= 1 {
        let mut p = vec![1i128];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0i128; p.len() + d];
            for (k, c) in p.iter().enumerate() {
                next[k] += c;
                next[k + d] -= c;
            }
            p = next;
        }
        return p;
    }
    let v = pivot.expect("pivot exists");
    let x = Monomial::one().with_exp(v, 1);
    // I + (x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(v) == 0).copied().collect();
    plus.push(x);
    // I : x
    let colon: Vec<Monomial> = gens.iter().map(|m| if m.exp(v) > 0 { m.with_exp(v, m.exp(v) - 1) } else { *m }).collect();
    let mut out = numerator_rec(minimalize(plus));
    let c = numerator_rec(minimalize(colon));
    add_poly(&mut out, &c, 1);
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn zero_ideal_is_projective_space() {
        let h = HilbertData::from_leading_monomials(&[], 4);
        assert_eq!((h.dimension, h.degree), (3, 1));
        // dim of degree-s forms in 4 variables: binom(s + 3, 3)
        assert_eq!(h.eval(2), Rational::from(10));
    }

    #[test]
    fn unit_ideal_is_empty() {
        let h = HilbertData::from_leading_monomials(&[Monomial::one()], 3);
        assert_eq!(h.dimension, -1);
    }

    #[test]
    fn hypersurfaces_and_points() {
        // a quartic hypersurface in P^2
        let h = HilbertData::from_leading_monomials(&[m(&[4, 0, 0])], 3);
        assert_eq!((h.dimension, h.degree), (1, 4));
        // (x^2, xy, y^3) in k[x, y, z]: 0-dimensional, 1 + 2 + 1 = 4 standard monomials in x,y
        let h = HilbertData::from_leading_monomials(&[m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 3, 0])], 3);
        assert_eq!((h.dimension, h.degree), (0, 4));
        assert_eq!(h.hilbert_polynomial, vec![Rational::from(4)]);
    }

    #[test]
    fn numerator_matches_direct_count() {
        let gens = [m(&[2, 1, 0]), m(&[0, 2, 2]), m(&[1, 0, 3]), m(&[1, 1, 1])];
        let num = hilbert_numerator(&gens, 3);
        // series coefficients from numerator / (1 - t)^3
        let mut series = [0i128; 12];
        for (k, c) in num.iter().enumerate() {
            for s in k..12 {
                let j = (s - k) as i128;
                series[s] += c * (j + 1) * (j + 2) / 2;
            }
        }
        for (s, &val) in series.iter().enumerate() {
            let mut count = 0;
            for a in 0..=s {
                for b in 0..=(s - a) {
                    let e = m(&[a as u16, b as u16, (s - a - b) as u16]);
                    if !gens.iter().any(|g| g.divides(&e)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(val, count, "degree {s}");
        }
    }
}
