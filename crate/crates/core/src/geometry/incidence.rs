//! Lines of the line scheme through a point of the point scheme.
//!
//! Every line of a component joins a point of the family's first coordinate
//! block to a point of the second (the component's linear conditions force
//! this, see [`ComponentSpec::join_conditions`]). A point `p` off both
//! blocks therefore lies on at most one line of each component, the join of
//! its two projections, and membership of that candidate decides the count.

use serde::Serialize;

use super::{solve_projective, to_full, ComponentSpec, GeometryError, LineP3};
use crate::multipoly::{MPoly, VarSet};
use crate::pointscheme::{cross_minors, distinct_everywhere, normalize, projectively_equal, SchemePoint};
use crate::scalars::{RatFunc, Rational, Ring, Specialize, TowerElem};
use crate::towers::{int, Surd};

#[derive(Clone, Debug, Serialize)]
pub struct IncidentLine {
    pub pluecker: Vec<Surd>,
    pub components: Vec<String>,
    /// The line contains the point.
    pub contains_point: bool,
    /// Number of system polynomials vanishing at the line.
    pub system_zeros: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceReport {
    pub point: String,
    /// Components all of whose lines pass through the point.
    pub infinite: Vec<String>,
    pub lines: Vec<IncidentLine>,
    pub count: usize,
    /// Pairs of lines that may coincide after specializing, per alpha.
    pub coincidences: Vec<(String, Vec<(usize, usize)>)>,
}

impl IncidenceReport {
    pub fn is_infinite(&self) -> bool {
        !self.infinite.is_empty()
    }

    pub fn double_memberships(&self) -> Vec<Vec<String>> {
        self.lines.iter().filter(|l| l.components.len() > 1).map(|l| l.components.clone()).collect()
    }
}

/// Whether every defining polynomial vanishes at `p`; undecidable values
/// (nonzero zero divisors that do not generate the unit ideal) are errors.
pub fn lies_on(c: &ComponentSpec, p: &[Surd]) -> Result<bool, GeometryError> {
    let vals: Vec<Surd> = c.defining_polys().iter().map(|f| f.eval(p, |x| Surd::from_base(x.clone()))).collect();
    let nonzero: Vec<Surd> = vals.into_iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(true);
    }
    if nonzero.iter().any(|v| v.is_unit()) || TowerElem::generates_unit_ideal(&nonzero) {
        return Ok(false);
    }
    Err(GeometryError::Indeterminate(format!("{} at a line", c.name)))
}

fn restrict(p: &[Surd], block: &[usize]) -> Vec<Surd> {
    (0..4).map(|j| if block.contains(&j) { p[j].clone() } else { Surd::zero() }).collect()
}

fn unit_vector(k: usize) -> Vec<Surd> {
    (0..4).map(|j| int((j == k) as i64)).collect()
}

fn is_zero_vec(v: &[Surd]) -> Result<bool, GeometryError> {
    if v.iter().all(|x| x.is_zero()) {
        return Ok(true);
    }
    if v.iter().any(|x| x.is_unit()) {
        return Ok(false);
    }
    Err(GeometryError::Indeterminate("a projected coordinate".into()))
}

/// Candidate lines of `c` through `p`, as Pluecker vectors; `None` when
/// every line of the family passes through `p`.
fn candidates(c: &ComponentSpec, p: &[Surd]) -> Result<Option<Vec<Vec<Surd>>>, GeometryError> {
    let [a, b] = c.family.blocks();
    let outside: Vec<Surd> = (0..4).filter(|j| !a.contains(j) && !b.contains(j)).map(|j| p[j].clone()).collect();
    if !is_zero_vec(&outside)? {
        return Ok(Some(Vec::new()));
    }
    let (pa, pb) = (restrict(p, &a), restrict(p, &b));
    match (is_zero_vec(&pa)?, is_zero_vec(&pb)?) {
        (false, false) => Ok(Some(vec![cross_minors(&pa, &pb)])),
        (false, true) if b.len() == 1 => Ok(Some(vec![cross_minors(&pa, &unit_vector(b[0]))])),
        (true, false) if b.len() == 1 => Ok(None),
        (false, true) => pencil(c, p, &b),
        (true, false) => pencil(c, p, &a),
        (true, true) => Err(GeometryError::UnknownPoint("zero vector".into())),
    }
}

/// Lines of `c` joining `p` to a point `s e_k + t e_l` of the other block.
fn pencil(c: &ComponentSpec, p: &[Surd], other: &[usize]) -> Result<Option<Vec<Vec<Surd>>>, GeometryError> {
    if other.len() != 2 {
        return Err(GeometryError::SolveFailure { context: c.name.into(), reason: "pencil over a plane".into() });
    }
    let st = VarSet::new(&["s", "t"])?;
    let q: Vec<MPoly<Surd>> = (0..4)
        .map(|j| match other.iter().position(|&k| k == j) {
            Some(r) => MPoly::var(&st, r),
            None => MPoly::zero(&st),
        })
        .collect();
    let pp: Vec<MPoly<Surd>> = p.iter().map(|x| MPoly::constant(&st, x.clone())).collect();
    let images = super::poly_cross_minors(&pp, &q);
    let eqs: Vec<MPoly<Surd>> = c.defining_polys().iter().map(|f| f.to_tower().substitute_all(&images)).collect::<Result<_, _>>()?;
    if eqs.iter().all(|e| e.is_zero()) {
        return Ok(None);
    }
    let sols = solve_projective(&eqs, &[0, 1]).map_err(|reason| GeometryError::SolveFailure { context: c.name.into(), reason })?;
    Ok(Some(
        sols.iter()
            .map(|st| {
                let qv: Vec<Surd> = (0..4)
                    .map(|j| match other.iter().position(|&k| k == j) {
                        Some(r) => st[r].clone(),
                        None => Surd::zero(),
                    })
                    .collect();
                cross_minors(p, &qv)
            })
            .collect(),
    ))
}

fn line_contains(pl: &[Surd], p: &[Surd]) -> Result<bool, GeometryError> {
    let pt = super::PlueckerPoint::new(pl.to_vec())?;
    Ok(super::line_from_pluecker(&pt)?.contains(p))
}

/// Pairs of Pluecker vectors that fail to be distinct after specializing.
fn line_coincidences(lines: &[Vec<Surd>], value: &Rational) -> Result<Vec<(usize, usize)>, GeometryError> {
    let spec: Vec<Vec<_>> =
        lines.iter().map(|l| to_full(l).iter().map(|c| c.specialize(value)).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if !distinct_everywhere(&spec[i], &spec[j]) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

pub fn lines_through_point(
    comps: &[ComponentSpec],
    system: &[MPoly<RatFunc>],
    q: &SchemePoint,
    alphas: &[Rational],
) -> Result<IncidenceReport, GeometryError> {
    let p = &q.coords;
    if p.len() != 4 {
        return Err(GeometryError::UnknownPoint(q.label.clone()));
    }
    let mut infinite = Vec::new();
    let mut found: Vec<Vec<Surd>> = Vec::new();
    for c in comps {
        match candidates(c, p)? {
            None => infinite.push(c.name.to_string()),
            Some(cands) => {
                for l in cands {
                    let l = normalize(&l);
                    if lies_on(c, &l)? && !found.iter().any(|f| projectively_equal(f, &l)) {
                        found.push(l);
                    }
                }
            }
        }
    }
    let mut lines = Vec::new();
    for l in &found {
        let mut labels = Vec::new();
        for c in comps {
            if lies_on(c, l)? {
                labels.push(c.name.to_string());
            }
        }
        let system_zeros = system.iter().filter(|f| f.eval(l, |x| Surd::from_base(x.clone())).is_zero()).count();
        lines.push(IncidentLine { pluecker: l.clone(), components: labels, contains_point: line_contains(l, p)?, system_zeros });
    }
    let mut coincidences = Vec::new();
    for a in alphas {
        coincidences.push((a.to_string(), line_coincidences(&found, a)?));
    }
    Ok(IncidenceReport { point: q.label.clone(), infinite, count: lines.len(), lines, coincidences })
}

/// Summary over all twenty points.
#[derive(Clone, Debug, Serialize)]
pub struct IncidenceSummary {
    pub reports: Vec<IncidenceReport>,
    pub infinite_points: Vec<String>,
    pub six_line_points: Vec<String>,
    pub four_line_points: Vec<String>,
    pub passed: bool,
}

/// Component pairs carried by the double lines at points of the third and
/// fourth families.
pub fn expected_double_memberships(family: usize) -> Vec<[&'static str; 2]> {
    match family {
        3 => vec![["L1", "L3"], ["L2", "L6b"]],
        4 => vec![["L1", "L4"], ["L2", "L5b"]],
        _ => Vec::new(),
    }
}

pub fn incidence_summary(
    comps: &[ComponentSpec],
    system: &[MPoly<RatFunc>],
    points: &[SchemePoint],
    alphas: &[Rational],
) -> Result<IncidenceSummary, GeometryError> {
    use rayon::prelude::*;
    let reports: Vec<IncidenceReport> =
        points.par_iter().map(|q| lines_through_point(comps, system, q, alphas)).collect::<Result<_, _>>()?;
    let mut passed = true;
    let mut infinite_points = Vec::new();
    let mut six = Vec::new();
    let mut four = Vec::new();
    for (q, r) in points.iter().zip(&reports) {
        let sound = r.lines.iter().all(|l| l.contains_point && l.system_zeros == system.len())
            && r.coincidences.iter().all(|(_, c)| c.is_empty());
        let ok = match q.family {
            0 => r.is_infinite(),
            1 | 2 => !r.is_infinite() && r.count == 6 && r.lines.iter().all(|l| l.components.len() == 1),
            _ => {
                let mut doubles = r.double_memberships();
                doubles.sort();
                let want: Vec<Vec<String>> =
                    expected_double_memberships(q.family).iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect();
                !r.is_infinite() && r.count == 4 && doubles == want
            }
        };
        passed &= sound && ok;
        match (r.is_infinite(), r.count) {
            (true, _) => infinite_points.push(q.label.clone()),
            (false, 6) => six.push(q.label.clone()),
            (false, 4) => four.push(q.label.clone()),
            _ => {}
        }
    }
    Ok(IncidenceSummary { reports, infinite_points, six_line_points: six, four_line_points: four, passed })
}

/// Convenience for tests and reports: the line through two points.
pub fn join(p: &[Surd], q: &[Surd]) -> Result<LineP3, GeometryError> {
    LineP3::new(p.to_vec(), q.to_vec())
}
