//! The point scheme: the 4x4 minors of the relation matrix, the twenty
//! closed points of `A(alpha)`, and the automorphism `sigma`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{MPoly, MonomialOrder, VarSet};
use crate::ncalg::{NcError, QuadAlgebra};
use crate::polymat::{combinations, MatrixError, ScalarMatrix};
use crate::scalars::{Field, RatFunc, Rational, Ring, ScalarError, Specialize, TowerElem};
use crate::towers::{alpha, int, Surd, Towers};

use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointError {
    #[error("generator {generator} does not vanish at {point}: value {value}")]
    VerificationFailure { point: String, generator: usize, value: String },
    #[error("sigma is not determined at {point}: relation matrix has rank {rank}, expected 3")]
    NonUniqueImage { point: String, rank: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The ideal generated by the 4x4 minors of the relation matrix.
#[derive(Clone, Debug)]
pub struct PointSchemeIdeal<K: Ring> {
    pub vars: Arc<VarSet>,
    /// Monic under grevlex, sorted by degree and then text.
    pub generators: Vec<MPoly<K>>,
}

impl<K: Field> PointSchemeIdeal<K> {
    /// True when every minor vanishes identically (point scheme = P^3).
    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    pub fn texts(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string_with(MonomialOrder::GrevLex)).collect()
    }
}

/// Sort key for canonical generator lists: degree, then text.
pub fn canonical_sort<K: Ring>(polys: &mut [MPoly<K>]) {
    polys.sort_by_cached_key(|p| (p.total_degree().unwrap_or(0), p.to_string_with(MonomialOrder::GrevLex)));
}

pub fn point_ideal<K: Field>(alg: &QuadAlgebra<K>) -> Result<PointSchemeIdeal<K>, PointError> {
    let m = alg.relation_matrix();
    let size = m.ncols();
    let mut generators: Vec<MPoly<K>> =
        m.enumerate_minors(size)?.into_iter().map(|mi| mi.poly.monic(MonomialOrder::GrevLex)).collect();
    canonical_sort(&mut generators);
    Ok(PointSchemeIdeal { vars: m.vars().clone(), generators })
}

/// A closed point of the point scheme with its family (0 for the
/// coordinate points, 1..=4 for the four root families).
#[derive(Clone, Debug, Serialize)]
pub struct SchemePoint {
    pub family: usize,
    pub label: String,
    pub coords: Vec<Surd>,
}

fn sign(s: bool) -> &'static str {
    if s {
        "+"
    } else {
        "-"
    }
}

fn pm(x: &Surd, s: bool) -> Surd {
    if s {
        x.clone()
    } else {
        x.neg_ref()
    }
}

/// The twenty points of the point scheme of `A(alpha)`, from the closed
/// forms of the four root families plus the coordinate points.
pub fn enumerate_points() -> Vec<SchemePoint> {
    let t = Towers::get();
    let (i, a, b, d) = (t.i(), t.a(), t.b(), t.d());
    let mut pts = Vec::with_capacity(20);
    for k in 0..4 {
        let coords = (0..4).map(|j| int((j == k) as i64)).collect();
        pts.push(SchemePoint { family: 0, label: format!("e{}", k + 1), coords });
    }
    let signs = [(true, true), (true, false), (false, true), (false, false)];
    // l1^2 = -2(1 + alpha), l3^2 = 2
    for &(s, u) in &signs {
        let coords = vec![pm(&t.s1(), s), int(1), pm(&b, u), int(1)];
        pts.push(SchemePoint { family: 1, label: format!("Z1({},{})", sign(s), sign(u)), coords });
    }
    // l1^2 = -2(1 - alpha), l3^2 = -2
    let ib = i.mul_ref(&b);
    for &(s, u) in &signs {
        let coords = vec![pm(&t.s2(), s), int(-1), pm(&ib, u), int(1)];
        pts.push(SchemePoint { family: 2, label: format!("Z2({},{})", sign(s), sign(u)), coords });
    }
    // l1^2 = -2, l2^2 = -1
    for &(s, u) in &signs {
        let coords = vec![pm(&ib, s), pm(&i, u), int(0), int(1)];
        pts.push(SchemePoint { family: 3, label: format!("Z3({},{})", sign(s), sign(u)), coords });
    }
    // alpha l2^2 + 2 l2 + alpha = 0: l2 = (-1 +- d)/alpha;
    // alpha l3^2 = -2 l2^2: l3 = +- l2 * i*b*a / alpha
    let inv_alpha = alpha().try_inv().expect("alpha is a unit");
    let iba = ib.mul_ref(&a);
    for &(s, u) in &signs {
        let l2 = int(-1).add_ref(&pm(&d, s)).mul_ref(&inv_alpha);
        let l3 = pm(&l2.mul_ref(&iba).mul_ref(&inv_alpha), u);
        let coords = vec![int(0), l2, l3, int(1)];
        pts.push(SchemePoint { family: 4, label: format!("Z4({},{})", sign(s), sign(u)), coords });
    }
    pts
}

/// Result of evaluating every generator at one point.
#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub label: String,
    pub vanishes: bool,
    pub failing_generators: Vec<usize>,
}

/// Evaluates all generators at all points in their towers.
pub fn verify_points(ideal: &PointSchemeIdeal<RatFunc>, points: &[SchemePoint]) -> Vec<PointCheck> {
    points
        .par_iter()
        .map(|p| {
            let failing: Vec<usize> = ideal
                .generators
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.eval(&p.coords, |c| TowerElem::from_base(c.clone())).is_zero())
                .map(|(k, _)| k)
                .collect();
            PointCheck { label: p.label.clone(), vanishes: failing.is_empty(), failing_generators: failing }
        })
        .collect()
}

/// The first failing (point, generator) pair as an error.
pub fn require_points(ideal: &PointSchemeIdeal<RatFunc>, points: &[SchemePoint]) -> Result<(), PointError> {
    for (p, c) in points.iter().zip(verify_points(ideal, points)) {
        if let Some(&g) = c.failing_generators.first() {
            let value = ideal.generators[g].eval(&p.coords, |c| TowerElem::from_base(c.clone()));
            return Err(PointError::VerificationFailure { point: p.label.clone(), generator: g, value: value.to_string() });
        }
    }
    Ok(())
}

/// 2x2 minors `p_i q_j - p_j q_i`.
pub fn cross_minors<R: Ring>(p: &[R], q: &[R]) -> Vec<R> {
    let n = p.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(p[i].mul_ref(&q[j]).sub_ref(&p[j].mul_ref(&q[i])));
        }
    }
    out
}

/// Projective equality, exact in the ring.
pub fn projectively_equal<R: Ring>(p: &[R], q: &[R]) -> bool {
    cross_minors(p, q).iter().all(|x| x.is_zero())
}

/// True when `p` and `q` differ under every specialization of the tower
/// generators: their 2x2 minors generate the unit ideal.
pub fn distinct_everywhere<K: Field>(p: &[TowerElem<K>], q: &[TowerElem<K>]) -> bool {
    let minors = cross_minors(p, q);
    if minors.iter().any(|m| m.as_base().is_some_and(|c| !c.is_zero())) {
        return true;
    }
    let nonzero: Vec<TowerElem<K>> = minors.into_iter().filter(|m| !m.is_zero()).collect();
    if nonzero.iter().any(|m| m.try_inv().is_ok()) {
        return true;
    }
    !nonzero.is_empty() && TowerElem::generates_unit_ideal(&nonzero)
}

/// Pairwise distinctness of `points` after `alpha -> value`, in the tower
/// containing all roots. Returns the indices of pairs that may coincide.
pub fn coinciding_pairs(points: &[SchemePoint], value: &Rational) -> Result<Vec<(usize, usize)>, PointError> {
    crate::scalars::check_generic(value)?;
    let t = Towers::get();
    let spec: Vec<Vec<TowerElem<Rational>>> = points
        .iter()
        .map(|p| p.coords.iter().map(|c| t.to_full(c).specialize(value)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..points.len()).flat_map(|i| ((i + 1)..points.len()).map(move |j| (i, j))).collect();
    Ok(pairs.into_par_iter().filter(|&(i, j)| !distinct_everywhere(&spec[i], &spec[j])).collect())
}

/// `sigma(q)`: the unique `q'` with all relations vanishing on `(q, q')`,
/// i.e. the kernel of the relation matrix evaluated at `q`.
pub fn sigma(alg: &QuadAlgebra<RatFunc>, q: &SchemePoint) -> Result<Vec<Surd>, PointError> {
    let m = alg.relation_matrix().eval_at(&q.coords, |c| TowerElem::from_base(c.clone()));
    let n = m.ncols();
    let rank = m.rank_unit_pivot()?;
    if rank + 1 != n {
        return Err(PointError::NonUniqueImage { point: q.label.clone(), rank });
    }
    // signed maximal minors of a full-rank (n-1)-row submatrix span the kernel
    for rows in combinations(m.nrows(), n - 1) {
        let sub: Vec<Vec<Surd>> = rows.iter().map(|&r| m.rows()[r].clone()).collect();
        let v: Vec<Surd> = (0..n)
            .map(|j| {
                let minor: Vec<Vec<Surd>> =
                    sub.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let det = ScalarMatrix::new(minor).det_cofactor().expect("square");
                if j % 2 == 1 {
                    det.neg_ref()
                } else {
                    det
                }
            })
            .collect();
        if v.iter().any(|x| x.try_inv().is_ok()) && m.mul_vec(&v).iter().all(|x| x.is_zero()) {
            return Ok(normalize(&v));
        }
    }
    Err(PointError::NonUniqueImage { point: q.label.clone(), rank })
}

/// Scale so the last unit coordinate becomes 1.
pub fn normalize<R: Ring>(v: &[R]) -> Vec<R> {
    match v.iter().rev().find_map(|x| x.try_inv().ok()) {
        Some(inv) => v.iter().map(|x| x.mul_ref(&inv)).collect(),
        None => v.to_vec(),
    }
}

/// The image of `q` under `sigma` as predicted in closed form.
pub fn expected_sigma(q: &SchemePoint) -> Vec<Surd> {
    let c = &q.coords;
    match q.family {
        0 => {
            let k = c.iter().position(|x| !x.is_zero()).expect("nonzero point");
            let image = [1, 0, 3, 2][k];
            (0..4).map(|j| int((j == image) as i64)).collect()
        }
        1 | 2 => vec![c[0].neg_ref(), c[1].clone(), c[2].clone(), c[3].clone()],
        3 => vec![c[0].neg_ref(), c[1].neg_ref(), c[2].clone(), c[3].clone()],
        _ => vec![c[0].clone(), c[1].clone(), c[2].clone(), c[1].mul_ref(&c[1])],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    /// `images[k]` is the index of `sigma(points[k])`, when it is listed.
    pub images: Vec<Option<usize>>,
    pub matches_closed_form: Vec<bool>,
    pub families_preserved: bool,
    pub involution: bool,
    pub orbits: Vec<(usize, usize)>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.families_preserved
            && self.involution
            && self.matches_closed_form.iter().all(|&b| b)
            && self.orbits.len() * 2 == self.images.len()
    }
}

pub fn sigma_report(alg: &QuadAlgebra<RatFunc>, points: &[SchemePoint]) -> Result<SigmaReport, PointError> {
    let images: Vec<Vec<Surd>> = points.par_iter().map(|q| sigma(alg, q)).collect::<Result<_, _>>()?;
    let index: Vec<Option<usize>> = images
        .iter()
        .zip(points)
        .map(|(img, q)| points.iter().position(|p| p.family == q.family && projectively_equal(&p.coords, img)))
        .collect();
    let matches_closed_form = images.iter().zip(points).map(|(img, q)| projectively_equal(img, &expected_sigma(q))).collect();
    let families_preserved = index.iter().all(|i| i.is_some());
    let involution = index.iter().enumerate().all(|(k, i)| i.is_some_and(|j| j != k && index[j] == Some(k)));
    let orbits = index.iter().enumerate().filter_map(|(k, i)| i.filter(|&j| j > k).map(|j| (k, j))).collect();
    Ok(SigmaReport { images: index, matches_closed_form, families_preserved, involution, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::point_minors;

    #[test]
    fn fifteen_minors_match_the_list() {
        let ideal = point_ideal(&QuadAlgebra::a_alpha()).unwrap();
        assert_eq!(ideal.generators.len(), 15);
        let golden: Vec<MPoly<RatFunc>> =
            point_minors().iter().map(|g| g.rename_into(&ideal.vars).unwrap()).collect();
        let cmp = crate::golden::compare_sets(&ideal.generators, &golden, |p| p.monic(MonomialOrder::GrevLex));
        assert!(cmp.matched, "{cmp:?}");
    }

    #[test]
    fn polynomial_ring_has_zero_minors() {
        let ideal = point_ideal(&QuadAlgebra::commutative()).unwrap();
        assert_eq!(ideal.generators.len(), 15);
        assert!(ideal.is_zero());
    }

    #[test]
    fn minor_set_ignores_relation_order() {
        let a = QuadAlgebra::a_alpha();
        let base = point_ideal(&a).unwrap().texts();
        let shuffled = point_ideal(&a.permute_relations(&[4, 2, 0, 5, 1, 3])).unwrap().texts();
        assert_eq!(base, shuffled);
    }

    #[test]
    fn twenty_points_vanish() {
        let ideal = point_ideal(&QuadAlgebra::a_alpha()).unwrap();
        let pts = enumerate_points();
        assert_eq!(pts.len(), 20);
        require_points(&ideal, &pts).unwrap();
    }

    #[test]
    fn off_scheme_point_is_rejected() {
        let ideal = point_ideal(&QuadAlgebra::a_alpha()).unwrap();
        let bad = SchemePoint { family: 0, label: "q".into(), coords: vec![int(1), int(1), int(1), int(1)] };
        assert!(matches!(require_points(&ideal, std::slice::from_ref(&bad)), Err(PointError::VerificationFailure { .. })));
        assert!(matches!(sigma(&QuadAlgebra::a_alpha(), &bad), Err(PointError::NonUniqueImage { .. })));
    }

    #[test]
    fn sigma_on_coordinate_points() {
        let a = QuadAlgebra::a_alpha();
        let pts = enumerate_points();
        let s1 = sigma(&a, &pts[0]).unwrap();
        assert!(projectively_equal(&s1, &pts[1].coords));
        let s3 = sigma(&a, &pts[2]).unwrap();
        assert!(projectively_equal(&s3, &pts[3].coords));
    }

    #[test]
    fn sigma_is_an_involution_with_ten_orbits() {
        let a = QuadAlgebra::a_alpha();
        let pts = enumerate_points();
        let r = sigma_report(&a, &pts).unwrap();
        assert!(r.families_preserved);
        assert!(r.involution);
        assert_eq!(r.orbits.len(), 10);
        assert!(r.matches_closed_form.iter().all(|&b| b), "{:?}", r.matches_closed_form);
    }

    #[test]
    fn points_are_distinct_after_specialization() {
        let pts = enumerate_points();
        for v in [3, 5] {
            assert_eq!(coinciding_pairs(&pts, &Rational::from(v)).unwrap(), vec![]);
        }
        // a duplicated point is caught
        let mut dup = pts[..6].to_vec();
        dup.push(pts[5].clone());
        assert_eq!(coinciding_pairs(&dup, &Rational::from(3)).unwrap(), vec![(5, 6)]);
    }
}
