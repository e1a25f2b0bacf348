//! Closed-form solutions of small homogeneous systems over the towers.
//!
//! Enough for the intersection and pencil computations: after splitting on
//! monomials, at most one affine unknown remains and the polynomial of least
//! degree in it is at most quadratic with a discriminant in Q(alpha).

use crate::multipoly::MPoly;
use crate::pointscheme::projectively_equal;
use crate::scalars::{RatFunc, Ring};
use crate::towers::{Surd, Towers};

fn fail(reason: impl Into<String>) -> String {
    reason.into()
}

fn set_var(p: &MPoly<Surd>, var: usize, value: &Surd) -> MPoly<Surd> {
    let vars = p.vars();
    let images: Vec<MPoly<Surd>> =
        (0..vars.len()).map(|k| if k == var { MPoly::constant(vars, value.clone()) } else { MPoly::var(vars, k) }).collect();
    p.substitute_all(&images).expect("image per variable")
}

fn push_unique(out: &mut Vec<Vec<Surd>>, p: Vec<Surd>) {
    if !out.iter().any(|q| projectively_equal(q, &p)) {
        out.push(p);
    }
}

/// Square root of `x` in the standard tower, when `x` lies in Q(alpha) and
/// its root is a rational function times a product of generators.
pub fn tower_sqrt(x: &Surd) -> Option<Surd> {
    let base = x.as_base()?;
    Towers::get().standard.sqrt_in_span(&base, RatFunc::sqrt_exact)
}

/// Roots of `c0 + c1 x + c2 x^2 + ...`, using the nonzero coefficients only
/// up to degree two.
fn univariate_roots(coeffs: &[Surd]) -> Result<Vec<Surd>, String> {
    let deg = coeffs.iter().rposition(|c| !c.is_zero()).ok_or_else(|| fail("polynomial vanishes identically"))?;
    let lead = coeffs[deg].try_inv().map_err(|_| fail(format!("leading coefficient {} is not a unit", coeffs[deg])))?;
    match deg {
        0 => Ok(Vec::new()),
        1 => Ok(vec![coeffs[0].neg_ref().mul_ref(&lead)]),
        2 => {
            let (c0, c1) = (&coeffs[0], &coeffs[1]);
            let disc = c1.mul_ref(c1).sub_ref(&Surd::from_i64(4).mul_ref(&coeffs[2]).mul_ref(c0));
            let s = tower_sqrt(&disc).ok_or_else(|| fail(format!("no square root of {disc} in the tower")))?;
            let half = Surd::from_rational(&crate::scalars::Rational::new(1, 2));
            let r1 = c1.neg_ref().add_ref(&s).mul_ref(&lead).mul_ref(&half);
            let r2 = c1.neg_ref().sub_ref(&s).mul_ref(&lead).mul_ref(&half);
            Ok(if s.is_zero() { vec![r1] } else { vec![r1, r2] })
        }
        _ => Err(fail(format!("degree {deg} in the last unknown"))),
    }
}

/// Projective zeros of homogeneous `polys`, with the variables outside
/// `alive` fixed to zero. Points are returned up to scalar, without
/// repetition.
pub fn solve_projective(polys: &[MPoly<Surd>], alive: &[usize]) -> Result<Vec<Vec<Surd>>, String> {
    let Some(first) = polys.first() else { return Err(fail("empty system")) };
    let n = first.vars().len();
    let polys: Vec<MPoly<Surd>> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if alive.is_empty() {
        return Ok(Vec::new());
    }
    let without = |v: usize| -> Vec<usize> { alive.iter().copied().filter(|&x| x != v).collect() };
    let zero = Surd::zero();
    if let Some(p) = polys.iter().find(|p| p.len() == 1) {
        let (m, c) = p.terms().iter().next().expect("one term");
        if !c.is_unit() {
            return Err(fail(format!("coefficient {c} is not a unit")));
        }
        let mut out = Vec::new();
        for &v in alive.iter().filter(|&&v| m.exp(v) > 0) {
            let sub: Vec<MPoly<Surd>> = polys.iter().map(|q| set_var(q, v, &zero)).collect();
            for pt in solve_projective(&sub, &without(v))? {
                push_unique(&mut out, pt);
            }
        }
        return Ok(out);
    }
    if alive.len() == 1 {
        let mut pt = vec![Surd::zero(); n];
        pt[alive[0]] = Surd::one();
        return Ok(vec![pt]);
    }
    let z = *alive.last().expect("nonempty");
    let mut out = Vec::new();
    let sub: Vec<MPoly<Surd>> = polys.iter().map(|q| set_var(q, z, &zero)).collect();
    for pt in solve_projective(&sub, &without(z))? {
        push_unique(&mut out, pt);
    }
    let rest = without(z);
    if rest.len() != 1 {
        return Err(fail(format!("{} affine unknowns remain", rest.len())));
    }
    let x = rest[0];
    let affine: Vec<MPoly<Surd>> = polys.iter().map(|q| set_var(q, z, &Surd::one())).filter(|q| !q.is_zero()).collect();
    let coeffs = |q: &MPoly<Surd>| -> Vec<Surd> {
        let deg = q.terms().keys().map(|m| m.exp(x) as usize).max().unwrap_or(0);
        let mut c = vec![Surd::zero(); deg + 1];
        for (m, v) in q.terms() {
            c[m.exp(x) as usize].add_assign_ref(v);
        }
        c
    };
    let Some(pivot) = affine.iter().min_by_key(|q| q.terms().keys().map(|m| m.exp(x)).max()) else {
        return Err(fail("a pencil of solutions"));
    };
    for r in univariate_roots(&coeffs(pivot))? {
        let mut pt = vec![Surd::zero(); n];
        pt[x] = r;
        pt[z] = Surd::one();
        if affine.iter().all(|q| q.eval(&pt, |c| c.clone()).is_zero()) {
            push_unique(&mut out, pt);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::VarSet;

    fn polys(texts: &[&str]) -> Vec<MPoly<Surd>> {
        let v = VarSet::new(&["x", "y", "z"]).unwrap();
        texts.iter().map(|t| MPoly::<RatFunc>::parse(t, &v).unwrap().to_tower()).collect()
    }

    #[test]
    fn conic_and_line() {
        // x^2 + y^2 = 0, z = 0 -> (+-i, 1, 0)
        let sols = solve_projective(&polys(&["x^2 + y^2", "z"]), &[0, 1, 2]).unwrap();
        assert_eq!(sols.len(), 2);
        let i = Towers::get().i();
        assert!(sols.iter().any(|s| projectively_equal(s, &[i.clone(), Surd::one(), Surd::zero()])));
        // alpha x^2 - 2 x y + alpha y^2 with y = 1: x = (1 +- d) / alpha
        let sols = solve_projective(&polys(&["alpha*x^2 - 2*x*y + alpha*y^2"]), &[0, 1]).unwrap();
        assert_eq!(sols.len(), 2);
        // no solutions
        assert!(solve_projective(&polys(&["x*y", "x^2 + y^2"]), &[0, 1]).unwrap().is_empty());
        assert!(solve_projective(&polys(&["x^2 + y^2 + z^2"]), &[0, 1, 2]).is_err());
    }
}
