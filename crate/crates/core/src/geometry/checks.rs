//! Smoothness of the component curves and rationality of the second one.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GeometryError;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::multipoly::{MPoly, MonomialOrder, VarSet};
use crate::polymat::PolyMatrix;
use crate::scalars::{RatFunc, Rational, Ring, TowerElem, TowerRing};
use crate::towers::{alpha, int, Surd, Towers};

fn poly(text: &str, vars: &Arc<VarSet>) -> MPoly<RatFunc> {
    MPoly::parse(text, vars).expect("bundled polynomial")
}

/// 2x2 minors of a 2 x n polynomial matrix.
fn two_minors(m: &PolyMatrix<RatFunc>) -> Vec<MPoly<RatFunc>> {
    let mut out = Vec::new();
    for i in 0..m.ncols() {
        for j in (i + 1)..m.ncols() {
            out.push(&(m.get(0, i) * m.get(1, j)) - &(m.get(0, j) * m.get(1, i)));
        }
    }
    out
}

fn specialized_basis(gens: &[MPoly<RatFunc>], a: &Rational, budget: usize) -> Result<GroebnerBasis<Rational>, GeometryError> {
    let gens: Vec<MPoly<Rational>> = gens.iter().map(|p| p.specialize(a)).collect::<Result<_, _>>()?;
    Ok(buchberger(&gens, MonomialOrder::GrevLex, budget)?)
}

/// Projective dimension of `V(gens)` at `alpha -> a`.
fn locus_dimension(gens: &[MPoly<RatFunc>], a: &Rational, budget: usize) -> Result<i64, GeometryError> {
    let gb = specialized_basis(gens, a, budget)?;
    Ok(gb.hilbert_data(gens[0].vars().len())?.dimension)
}

pub struct Curves {
    pub v1: Arc<VarSet>,
    pub f1: MPoly<RatFunc>,
    pub g1: MPoly<RatFunc>,
    pub v2: Arc<VarSet>,
    pub f2: MPoly<RatFunc>,
    pub g2: MPoly<RatFunc>,
    pub vh: Arc<VarSet>,
    pub h: MPoly<RatFunc>,
    pub vw: Arc<VarSet>,
    pub w: MPoly<RatFunc>,
}

impl Curves {
    pub fn new() -> Self {
        let v1 = VarSet::new(&["M12", "M14", "M23", "M34"]).expect("distinct");
        let v2 = VarSet::new(&["M12", "M13", "M24", "M34"]).expect("distinct");
        let vh = VarSet::new(&["M12", "M13", "M14"]).expect("distinct");
        let vw = VarSet::new(&["M13", "M23", "M34"]).expect("distinct");
        Curves {
            f1: poly("M12*M34 + M14*M23", &v1),
            g1: poly("M12^2 + M14^2 + alpha*M23^2 - 2*M23*M34 + alpha*M34^2", &v1),
            f2: poly("M12*M34 - M13*M24", &v2),
            g2: poly("M12^2 + 2*M24^2 + alpha*M34^2", &v2),
            h: poly("M12^3 - M13^2*M14 + M12*M14^2", &vh),
            w: poly("M13^2*M23 - alpha*M23^2*M34 + 2*M23*M34^2 - alpha*M34^3", &vw),
            v1,
            v2,
            vh,
            vw,
        }
    }

    pub fn j1(&self) -> PolyMatrix<RatFunc> {
        PolyMatrix::jacobian(&self.v1, &[self.f1.clone(), self.g1.clone()], &[0, 1, 2, 3])
    }

    pub fn j2(&self) -> PolyMatrix<RatFunc> {
        PolyMatrix::jacobian(&self.v2, &[self.f2.clone(), self.g2.clone()], &[0, 1, 2, 3])
    }
}

impl Default for Curves {
    fn default() -> Self {
        Self::new()
    }
}

/// A point of `V(f1, g1)` from the chart `(gamma zeta, gamma, -zeta, 1)`
/// with `gamma^2 = -alpha - 2 zeta / (zeta^2 + 1)`; `gamma` is adjoined as a
/// square root when it is irrational.
pub fn sample_l1_point(a: &Rational, zeta: &Rational) -> Vec<TowerElem<Rational>> {
    let one = Rational::one();
    let g2 = a.neg_ref().sub_ref(&Rational::from(2).mul_ref(zeta).mul_ref(&zeta.mul_ref(zeta).add_ref(&one).try_inv().expect("zeta^2 + 1 > 0")));
    let gamma = match g2.sqrt_exact() {
        Some(r) => TowerElem::from_base(r),
        None => {
            let ring = TowerRing::<Rational>::base().adjoin_sqrt(&TowerElem::from_base(g2.clone()), "g").expect("fresh name");
            ring.generator("g").expect("generator")
        }
    };
    let z = TowerElem::from_base(zeta.clone());
    vec![gamma.mul_ref(&z), gamma, z.neg_ref(), TowerElem::from_i64(1)]
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-40..=40);
    let d: i64 = rng.gen_range(1..=12);
    Rational::new(n, d)
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    pub j1_samples: usize,
    pub j1_rank_two: usize,
    /// Per alpha: `V(f1, g1, 2x2 minors of J1)` is empty.
    pub j1_nonsingular: Vec<bool>,
    pub j2_rank_at_eps2: usize,
    /// Per alpha: `V(f2, g2, 2x2 minors of J2) = {eps2}`.
    pub j2_unique_drop: Vec<bool>,
    /// Per alpha: `h` and its gradient have no common projective zero.
    pub h_nonsingular: Vec<bool>,
    pub w_nonsingular: Vec<bool>,
    pub passed: bool,
}

/// Smallest `k <= max` with `x^k` in the ideal of `gb`.
fn nilpotency(gb: &GroebnerBasis<Rational>, x: &MPoly<Rational>, max: u32) -> Option<u32> {
    (1..=max).find(|&k| gb.contains(&x.pow(k)))
}

pub fn jacobian_checks(alphas: &[Rational], samples_per_alpha: usize, seed: u64, budget: usize) -> Result<JacobianReport, GeometryError> {
    let cv = Curves::new();
    let j1 = cv.j1();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut j1_samples = 0;
    let mut j1_rank_two = 0;
    for a in alphas {
        crate::scalars::check_generic(a)?;
        let (f1, g1) = (cv.f1.specialize(a)?, cv.g1.specialize(a)?);
        let ja = PolyMatrix::new(&cv.v1, j1.rows().iter().map(|r| r.iter().map(|e| e.specialize(a)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?)?;
        for _ in 0..samples_per_alpha {
            let pt = sample_l1_point(a, &random_rational(&mut rng));
            let coerce = |c: &Rational| TowerElem::from_base(c.clone());
            if !f1.eval(&pt, coerce).is_zero() || !g1.eval(&pt, coerce).is_zero() {
                return Err(GeometryError::SolveFailure { context: "L1 sample".into(), reason: "sample is off the curve".into() });
            }
            j1_samples += 1;
            if ja.rank_at(&pt, coerce)? == 2 {
                j1_rank_two += 1;
            }
        }
    }
    let mut j1_nonsingular = Vec::new();
    let mut gens1 = vec![cv.f1.clone(), cv.g1.clone()];
    gens1.extend(two_minors(&j1));
    for a in alphas {
        j1_nonsingular.push(locus_dimension(&gens1, a, budget)? == -1);
    }

    let j2 = cv.j2();
    let eps2: Vec<RatFunc> = vec![RatFunc::zero(), RatFunc::one(), RatFunc::zero(), RatFunc::zero()];
    let j2_rank_at_eps2 = j2.rank_at(&eps2, |c| c.clone())?;
    let mut gens2 = vec![cv.f2.clone(), cv.g2.clone()];
    gens2.extend(two_minors(&j2));
    let mut j2_unique_drop = Vec::new();
    for a in alphas {
        let gb = specialized_basis(&gens2, a, budget)?;
        let zero_dim = gb.hilbert_data(4)?.dimension == 0;
        let radical_ok = [0, 2, 3].iter().all(|&k| nilpotency(&gb, &MPoly::var(&cv.v2, k), 8).is_some());
        let on_curve = gens2.iter().all(|g| g.eval(&eps2, |c| c.clone()).is_zero());
        j2_unique_drop.push(zero_dim && radical_ok && on_curve);
    }

    let gradient_locus = |f: &MPoly<RatFunc>| -> Vec<MPoly<RatFunc>> {
        let mut g = vec![f.clone()];
        g.extend((0..f.vars().len()).map(|k| f.derivative(k)));
        g
    };
    let mut h_nonsingular = Vec::new();
    let mut w_nonsingular = Vec::new();
    for a in alphas {
        h_nonsingular.push(locus_dimension(&gradient_locus(&cv.h), a, budget)? == -1);
        w_nonsingular.push(locus_dimension(&gradient_locus(&cv.w), a, budget)? == -1);
    }
    let passed = j1_samples > 0
        && j1_rank_two == j1_samples
        && j1_nonsingular.iter().all(|&b| b)
        && j2_rank_at_eps2 == 1
        && j2_unique_drop.iter().all(|&b| b)
        && h_nonsingular.iter().all(|&b| b)
        && w_nonsingular.iter().all(|&b| b);
    Ok(JacobianReport { j1_samples, j1_rank_two, j1_nonsingular, j2_rank_at_eps2, j2_unique_drop, h_nonsingular, w_nonsingular, passed })
}

/// A fraction of polynomials over the standard tower.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: MPoly<Surd>,
    pub den: MPoly<Surd>,
}

impl Frac {
    pub fn poly(p: MPoly<Surd>) -> Self {
        let den = MPoly::one(p.vars());
        Frac { num: p, den }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Surd) -> Self {
        Frac::poly(MPoly::constant(vars, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        Frac { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Frac { num: &(&self.num * &o.den) - &(&o.num * &self.den), den: &self.den * &o.den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Frac { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn div(&self, o: &Self) -> Self {
        Frac { num: &self.num * &o.den, den: &self.den * &o.num }
    }
}

/// `chi(x, z) = -x (b z + i) / (a z)`.
pub fn chi(x: &Frac, z: &Frac) -> Frac {
    let t = Towers::get();
    let v = x.num.vars();
    let c = |s: Surd| Frac::constant(v, s);
    let top = x.mul(&c(t.b()).mul(z).add(&c(t.i()))).mul(&c(int(-1)));
    top.div(&c(t.a()).mul(z))
}

/// `delta(t) = (a (1 - t^2) / (2 b t), (1 - t^2) / (i b (1 + t^2)))`.
pub fn delta(s: &Frac) -> (Frac, Frac) {
    let t = Towers::get();
    let v = s.num.vars();
    let c = |x: Surd| Frac::constant(v, x);
    let sq = s.mul(s);
    let one_minus = c(int(1)).sub(&sq);
    let one_plus = c(int(1)).add(&sq);
    let x = c(t.a()).mul(&one_minus).div(&c(int(2).mul_ref(&t.b())).mul(s));
    let z = one_minus.div(&c(t.i().mul_ref(&t.b())).mul(&one_plus));
    (x, z)
}

/// `x^2 + 2 x^2 z^2 + alpha z^2` over the tower in variables `x, z`.
pub fn birational_curve(vars: &Arc<VarSet>) -> MPoly<Surd> {
    poly("x^2 + 2*x^2*z^2 + alpha*z^2", vars).to_tower()
}

#[derive(Clone, Debug, Serialize)]
pub struct BirationalReport {
    /// `chi(delta(t)) - t` vanishes in Q(alpha, i, a, b)(t).
    pub chi_delta: bool,
    /// `delta(t)` satisfies the curve equation identically.
    pub delta_on_curve: bool,
    /// Both coordinates of `delta(chi(x, z)) - (x, z)` reduce to zero
    /// modulo the curve, with denominators nonzero on it.
    pub delta_chi: bool,
    pub passed: bool,
}

pub fn birational_check() -> Result<BirationalReport, GeometryError> {
    let vt = VarSet::new(&["t"])?;
    let t = Frac::poly(MPoly::var(&vt, 0));
    let (dx, dz) = delta(&t);
    let chi_delta = chi(&dx, &dz).sub(&t).num.is_zero();
    let c = |s: Surd| Frac::constant(&vt, s);
    let on_curve = dx.mul(&dx).add(&c(int(2)).mul(&dx).mul(&dx).mul(&dz).mul(&dz)).add(&c(alpha()).mul(&dz).mul(&dz));
    let delta_on_curve = on_curve.num.is_zero();

    let vxz = VarSet::new(&["x", "z"])?;
    let curve = birational_curve(&vxz);
    let reduce = |p: &MPoly<Surd>| p.try_normal_form(std::slice::from_ref(&curve), MonomialOrder::GrevLex).expect("unit leading coefficient");
    let x = Frac::poly(MPoly::var(&vxz, 0));
    let z = Frac::poly(MPoly::var(&vxz, 1));
    let (bx, bz) = delta(&chi(&x, &z));
    let dx_diff = bx.sub(&x);
    let dz_diff = bz.sub(&z);
    let delta_chi = reduce(&dx_diff.num).is_zero()
        && reduce(&dz_diff.num).is_zero()
        && !reduce(&dx_diff.den).is_zero()
        && !reduce(&dz_diff.den).is_zero();
    Ok(BirationalReport { chi_delta, delta_on_curve, delta_chi, passed: chi_delta && delta_on_curve && delta_chi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobians_match_published_forms() {
        let cv = Curves::new();
        let j1 = PolyMatrix::<RatFunc>::parse(
            &cv.v1,
            &[&["M34", "M23", "M14", "M12"], &["2*M12", "2*M14", "2*(alpha*M23 - M34)", "2*(alpha*M34 - M23)"]],
        )
        .unwrap();
        assert_eq!(cv.j1(), j1);
        let j2 = PolyMatrix::<RatFunc>::parse(&cv.v2, &[&["M34", "-M24", "-M13", "M12"], &["2*M12", "0", "4*M24", "2*alpha*M34"]]).unwrap();
        assert_eq!(cv.j2(), j2);
    }

    #[test]
    fn birational_maps_are_inverse() {
        let r = birational_check().unwrap();
        assert!(r.chi_delta && r.delta_on_curve && r.delta_chi, "{r:?}");
    }
}
