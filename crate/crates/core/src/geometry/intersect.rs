//! Pairwise intersections of the components, solved in closed form.

use rayon::prelude::*;
use serde::Serialize;

use super::{solve_projective, to_full, ComponentSpec, GeometryError};
use crate::linescheme::m_vars;
use crate::multipoly::MPoly;
use crate::ncalg::{normalizing_elements, pluecker_annihilator, IntersectionDim, QuadAlgebra, RightIdealPiece};
use crate::pointscheme::{distinct_everywhere, normalize, projectively_equal};
use crate::scalars::{RatFunc, Rational, Ring, Specialize};
use crate::towers::{alpha, int, Surd, Towers};

#[derive(Clone, Debug, Serialize)]
pub struct Intersection {
    pub first: String,
    pub second: String,
    pub points: Vec<Vec<Surd>>,
}

fn zero_out(p: &MPoly<Surd>, dead: &[usize]) -> MPoly<Surd> {
    let vars = p.vars();
    let images: Vec<MPoly<Surd>> =
        (0..vars.len()).map(|k| if dead.contains(&k) { MPoly::zero(vars) } else { MPoly::var(vars, k) }).collect();
    p.substitute_all(&images).expect("image per variable")
}

/// `V(I_c1 + I_c2)`: the linear conditions of both components are imposed
/// first, then the remaining forms are solved.
pub fn intersect(c1: &ComponentSpec, c2: &ComponentSpec) -> Result<Intersection, GeometryError> {
    let mut dead: Vec<usize> = c1.linear.iter().chain(&c2.linear).copied().collect();
    dead.sort_unstable();
    dead.dedup();
    let alive: Vec<usize> = (0..6).filter(|k| !dead.contains(k)).collect();
    let polys: Vec<MPoly<Surd>> = c1.nonlinear.iter().chain(&c2.nonlinear).map(|p| zero_out(&p.to_tower(), &dead)).collect();
    let polys = if polys.is_empty() { vec![MPoly::zero(&m_vars())] } else { polys };
    let context = format!("{} and {}", c1.name, c2.name);
    let points = solve_projective(&polys, &alive).map_err(|reason| GeometryError::SolveFailure { context: context.clone(), reason })?;
    // every solution must satisfy both full ideals
    for pt in &points {
        for p in c1.defining_polys().iter().chain(&c2.defining_polys()) {
            if !p.eval(pt, |c| Surd::from_base(c.clone())).is_zero() {
                return Err(GeometryError::SolveFailure { context, reason: format!("{p} does not vanish at a solution") });
            }
        }
    }
    Ok(Intersection { first: c1.name.to_string(), second: c2.name.to_string(), points: points.iter().map(|p| normalize(p)).collect() })
}

pub fn pairwise_intersections(comps: &[ComponentSpec]) -> Result<Vec<Intersection>, GeometryError> {
    let pairs: Vec<(usize, usize)> = (0..comps.len()).flat_map(|i| ((i + 1)..comps.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().map(|&(i, j)| intersect(&comps[i], &comps[j])).collect()
}

fn e(k: usize) -> Vec<Surd> {
    (1..=6).map(|j| int((j == k) as i64)).collect()
}

/// The published table of nonempty intersections.
pub fn expected_intersections() -> Vec<(&'static str, &'static str, Vec<Vec<Surd>>)> {
    let t = Towers::get();
    let (i, a, b, d) = (t.i(), t.a(), t.b(), t.d());
    let ia = i.mul_ref(&a);
    let ib = i.mul_ref(&b);
    let z = || int(0);
    let pm = |x: &Surd| [x.clone(), x.neg_ref()];
    let two = |f: &dyn Fn(Surd) -> Vec<Surd>, x: &Surd| pm(x).into_iter().map(f).collect::<Vec<_>>();
    vec![
        ("L2", "L3", vec![e(2)]),
        ("L2", "L4", vec![e(2)]),
        ("L3", "L4", vec![e(2)]),
        ("L3", "L5a", vec![e(3)]),
        ("L4", "L6a", vec![e(4)]),
        ("L5a", "L6a", vec![e(5)]),
        ("L1", "L3", two(&|s| vec![int(1), z(), s, z(), z(), z()], &i)),
        ("L1", "L4", two(&|s| vec![z(), z(), z(), alpha(), z(), int(1).add_ref(&s)], &d)),
        ("L1", "L5b", two(&|s| vec![z(), z(), s, z(), z(), int(1)], &ia)),
        ("L1", "L6b", two(&|s| vec![s, z(), z(), int(1), z(), z()], &ia)),
        ("L2", "L5b", two(&|s| vec![z(), z(), z(), z(), a.clone(), s], &ib)),
        ("L2", "L6b", two(&|s| vec![b.clone(), z(), z(), z(), s, z()], &i)),
        ("L5a", "L5b", two(&|s| vec![z(), z(), b.clone(), z(), s, z()], &i)),
        ("L6a", "L6b", two(&|s| vec![z(), z(), z(), b.clone(), s, z()], &ia)),
    ]
}

fn same_point_set(a: &[Vec<Surd>], b: &[Vec<Surd>]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| projectively_equal(p, q)))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionMismatch {
    pub pair: String,
    pub computed: Vec<String>,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub nonempty_pairs: usize,
    pub one_point_pairs: usize,
    pub two_point_pairs: usize,
    pub mismatches: Vec<IntersectionMismatch>,
    pub distinct_points: usize,
    /// For each specialized alpha, pairs of listed points that may coincide.
    pub coincidences: Vec<(String, Vec<(usize, usize)>)>,
    pub passed: bool,
}

fn texts(pts: &[Vec<Surd>]) -> Vec<String> {
    pts.iter().map(|p| format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))).collect()
}

/// All distinct intersection points, in order of first appearance.
pub fn intersection_points(found: &[Intersection]) -> Vec<Vec<Surd>> {
    let mut out: Vec<Vec<Surd>> = Vec::new();
    for p in found.iter().flat_map(|x| &x.points) {
        if !out.iter().any(|q| projectively_equal(q, p)) {
            out.push(p.clone());
        }
    }
    out
}

/// Pairs of `points` that are not distinct under `alpha -> value`.
pub fn coincidences_at(points: &[Vec<Surd>], value: &Rational) -> Result<Vec<(usize, usize)>, GeometryError> {
    crate::scalars::check_generic(value)?;
    let spec: Vec<Vec<_>> =
        points.iter().map(|p| to_full(p).iter().map(|c| c.specialize(value)).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..points.len()).flat_map(|i| ((i + 1)..points.len()).map(move |j| (i, j))).collect();
    Ok(pairs.into_par_iter().filter(|&(i, j)| !distinct_everywhere(&spec[i], &spec[j])).collect())
}

pub fn compare_intersections(found: &[Intersection], alphas: &[Rational]) -> Result<IntersectionReport, GeometryError> {
    let expected = expected_intersections();
    let mut mismatches = Vec::new();
    for x in found {
        let exp = expected
            .iter()
            .find(|(f, s, _)| (*f, *s) == (x.first.as_str(), x.second.as_str()))
            .map(|(_, _, p)| p.clone())
            .unwrap_or_default();
        if !same_point_set(&x.points, &exp) {
            mismatches.push(IntersectionMismatch { pair: format!("{} & {}", x.first, x.second), computed: texts(&x.points), expected: texts(&exp) });
        }
    }
    let nonempty: Vec<&Intersection> = found.iter().filter(|x| !x.points.is_empty()).collect();
    let points = intersection_points(found);
    let mut coincidences = Vec::new();
    for a in alphas {
        coincidences.push((a.to_string(), coincidences_at(&points, a)?));
    }
    let passed = mismatches.is_empty()
        && found.len() == 28
        && points.len() == 20
        && coincidences.iter().all(|(_, c)| c.is_empty());
    Ok(IntersectionReport {
        nonempty_pairs: nonempty.len(),
        one_point_pairs: nonempty.iter().filter(|x| x.points.len() == 1).count(),
        two_point_pairs: nonempty.iter().filter(|x| x.points.len() == 2).count(),
        mismatches,
        distinct_points: points.len(),
        coincidences,
        passed,
    })
}

/// `dim(J_2 ∩ K_p)` at each intersection point, and the explicit span at
/// `E4 +- i a E1`.
#[derive(Clone, Debug, Serialize)]
pub struct IdealDimReport {
    pub delta: String,
    pub epsilon: String,
    pub dims: Vec<(String, IntersectionDim)>,
    pub all_two: bool,
    /// At `E4 +- i a E1`: the images of `x3 x4 - x4 x3` and `x2^2` are
    /// independent and lie in the intersection.
    pub span_checks: Vec<bool>,
    pub passed: bool,
}

fn surd_coerce(c: &RatFunc) -> Surd {
    Surd::from_base(c.clone())
}

pub fn ideal_dim_report(
    alg: &QuadAlgebra<RatFunc>,
    delta: &RatFunc,
    epsilon: &RatFunc,
    points: &[Vec<Surd>],
) -> Result<IdealDimReport, GeometryError> {
    let d2 = alg.degree_two()?;
    let (dl, ep) = (surd_coerce(delta), surd_coerce(epsilon));
    let j_elems = normalizing_elements(&dl, &ep);
    let dims: Vec<(String, IntersectionDim)> = points
        .par_iter()
        .map(|p| -> Result<_, GeometryError> {
            let forms = pluecker_annihilator(p)?;
            let dim = RightIdealPiece::new(&d2, &j_elems, &forms, surd_coerce).dims()?;
            Ok((texts(std::slice::from_ref(p)).remove(0), dim))
        })
        .collect::<Result<_, _>>()?;
    let all_two = dims.iter().all(|(_, d)| d.dim == 2);
    let t = Towers::get();
    let ia = t.i().mul_ref(&t.a());
    let n = alg.n();
    let mut commutator = vec![Surd::zero(); n * n];
    commutator[2 * n + 3] = int(1);
    commutator[3 * n + 2] = int(-1);
    let mut x2sq = vec![Surd::zero(); n * n];
    x2sq[n + 1] = int(1);
    let mut span_checks = Vec::new();
    for s in [ia.clone(), ia.neg_ref()] {
        let p = vec![s, int(0), int(0), int(1), int(0), int(0)];
        let forms = pluecker_annihilator(&p)?;
        let piece = RightIdealPiece::new(&d2, &j_elems, &forms, surd_coerce);
        let u = d2.reduce(&commutator, surd_coerce);
        let w = d2.reduce(&x2sq, surd_coerce);
        let independent = crate::polymat::ScalarMatrix::new(vec![u.clone(), w.clone()]).rank_unit_pivot()? == 2;
        span_checks.push(piece.dims()?.dim == 2 && independent && piece.in_intersection(&u)? && piece.in_intersection(&w)?);
    }
    let passed = all_two && span_checks.iter().all(|&b| b);
    Ok(IdealDimReport { delta: delta.to_string(), epsilon: epsilon.to_string(), dims, all_two, span_checks, passed })
}
