//! The eight irreducible components of the line scheme and the families of
//! lines they parametrize.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::GeometryError;
use crate::groebner::{buchberger, GroebnerBasis, HilbertData};
use crate::linescheme::{m_vars, PAIRS};
use crate::multipoly::{MPoly, MonomialOrder, VarSet};
use crate::scalars::{RatFunc, Rational, Ring};

pub const FAMILY_VARS: [&str; 8] = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"];

/// Lines joining a point `(a1, .., a4)` of one coordinate subspace to a
/// point `(b1, .., b4)` of a complementary one, subject to `constraints`.
#[derive(Clone, Debug)]
pub struct LineFamily {
    pub vars: Arc<VarSet>,
    pub rows: [Vec<MPoly<RatFunc>>; 2],
    pub constraints: Vec<MPoly<RatFunc>>,
}

impl LineFamily {
    /// Coordinates on which each row may be nonzero.
    pub fn blocks(&self) -> [Vec<usize>; 2] {
        [0, 1].map(|r| (0..4).filter(|&j| !self.rows[r][j].is_zero()).collect())
    }

    /// Pluecker coordinates of the generic member.
    pub fn pluecker(&self) -> Vec<MPoly<RatFunc>> {
        super::poly_cross_minors(&self.rows[0], &self.rows[1])
    }
}

#[derive(Clone, Debug)]
pub struct ComponentSpec {
    pub name: &'static str,
    /// Pluecker coordinates vanishing on the component.
    pub linear: Vec<usize>,
    pub nonlinear: Vec<MPoly<RatFunc>>,
    pub degree: i64,
    pub family: LineFamily,
}

impl ComponentSpec {
    pub fn defining_polys(&self) -> Vec<MPoly<RatFunc>> {
        let m = m_vars();
        let mut out: Vec<MPoly<RatFunc>> = self.linear.iter().map(|&k| MPoly::var(&m, k)).collect();
        out.extend(self.nonlinear.iter().cloned());
        out
    }

    /// Linear conditions on Pluecker coordinates saying that a line meets
    /// both blocks of the family; see [`meets_span_conditions`].
    pub fn join_conditions(&self) -> Vec<usize> {
        let [a, b] = self.family.blocks();
        let mut out = meets_span_conditions(&a);
        out.extend(meets_span_conditions(&b));
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Pluecker coordinates that vanish on every line meeting the coordinate
/// subspace spanned by `block`, as far as linear conditions go: lines
/// through the point `e_k` have `M_ij = 0` for `i, j != k`; lines meeting
/// the line `e_k e_l` have `M_ij = 0` for `{i, j}` the complementary pair.
/// Lines meeting a plane satisfy no linear condition.
pub fn meets_span_conditions(block: &[usize]) -> Vec<usize> {
    match block.len() {
        1 => PAIRS.iter().enumerate().filter(|(_, &(i, j))| i != block[0] && j != block[0]).map(|(k, _)| k).collect(),
        2 => PAIRS.iter().enumerate().filter(|(_, &(i, j))| !block.contains(&i) && !block.contains(&j)).map(|(k, _)| k).collect(),
        _ => Vec::new(),
    }
}

fn parse_m(text: &str) -> MPoly<RatFunc> {
    MPoly::parse(text, &m_vars()).expect("bundled component polynomial")
}

fn family(rows: [[&str; 4]; 2], constraints: &[&str]) -> LineFamily {
    let vars = VarSet::new(&FAMILY_VARS).expect("distinct names");
    let p = |t: &str| MPoly::<RatFunc>::parse(t, &vars).expect("bundled family");
    LineFamily { rows: rows.map(|r| r.iter().map(|t| p(t)).collect()), constraints: constraints.iter().map(|t| p(t)).collect(), vars }
}

fn idx(names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| crate::golden::M_VARS.iter().position(|m| m == n).expect("Pluecker name")).collect()
}

/// The components `L1, L2, L3, L4, L5a, L5b, L6a, L6b`.
pub fn components() -> Vec<ComponentSpec> {
    vec![
        ComponentSpec {
            name: "L1",
            linear: idx(&["M13", "M24"]),
            nonlinear: vec![
                parse_m("M12*M34 + M14*M23"),
                parse_m("M12^2 + M14^2 + alpha*M23^2 - 2*M23*M34 + alpha*M34^2"),
            ],
            degree: 4,
            family: family(
                [["a1", "0", "a3", "0"], ["0", "b2", "0", "b4"]],
                &["a1^2*b2^2 + a1^2*b4^2 + alpha*b2^2*a3^2 + 2*b2*a3^2*b4 + alpha*a3^2*b4^2"],
            ),
        },
        ComponentSpec {
            name: "L2",
            linear: idx(&["M14", "M23"]),
            nonlinear: vec![parse_m("M12*M34 - M13*M24"), parse_m("M12^2 + 2*M24^2 + alpha*M34^2")],
            degree: 4,
            family: family(
                [["a1", "0", "0", "a4"], ["0", "b2", "b3", "0"]],
                &["a1^2*b2^2 + 2*b2^2*a4^2 + alpha*b3^2*a4^2"],
            ),
        },
        ComponentSpec {
            name: "L3",
            linear: idx(&["M23", "M24", "M34"]),
            nonlinear: vec![parse_m("M12^3 - M13^2*M14 + M12*M14^2")],
            degree: 3,
            family: family([["0", "a2", "a3", "a4"], ["1", "0", "0", "0"]], &["a2^3 - a3^2*a4 + a2*a4^2"]),
        },
        ComponentSpec {
            name: "L4",
            linear: idx(&["M12", "M14", "M24"]),
            nonlinear: vec![parse_m("M13^2*M23 - alpha*M23^2*M34 + 2*M23*M34^2 - alpha*M34^3")],
            degree: 3,
            family: family(
                [["a1", "a2", "0", "a4"], ["0", "0", "1", "0"]],
                &["a1^2*a2 + alpha*a2^2*a4 + 2*a2*a4^2 + alpha*a4^3"],
            ),
        },
        ComponentSpec {
            name: "L5a",
            linear: idx(&["M12", "M13", "M23", "M34"]),
            nonlinear: vec![],
            degree: 1,
            family: family([["a1", "a2", "0", "0"], ["0", "0", "0", "1"]], &[]),
        },
        ComponentSpec {
            name: "L5b",
            linear: idx(&["M12", "M13", "M23"]),
            nonlinear: vec![parse_m("M14^2 + 2*M24^2 + alpha*M34^2")],
            degree: 2,
            family: family([["a1", "a2", "a3", "0"], ["0", "0", "0", "1"]], &["a1^2 + 2*a2^2 + alpha*a3^2"]),
        },
        ComponentSpec {
            name: "L6a",
            linear: idx(&["M12", "M13", "M14", "M34"]),
            nonlinear: vec![],
            degree: 1,
            family: family([["0", "0", "a3", "a4"], ["0", "1", "0", "0"]], &[]),
        },
        ComponentSpec {
            name: "L6b",
            linear: idx(&["M13", "M14", "M34"]),
            nonlinear: vec![parse_m("M12^2 + alpha*M23^2 + 2*M24^2")],
            degree: 2,
            family: family([["a1", "0", "a3", "a4"], ["0", "1", "0", "0"]], &["a1^2 + alpha*a3^2 + 2*a4^2"]),
        },
    ]
}

/// Membership and degree checks for one component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentCheck {
    pub name: String,
    /// System polynomials reducing to zero modulo the component ideal
    /// (Groebner basis over Q(alpha)).
    pub members_symbolic: usize,
    /// The same at each specialized alpha, in order.
    pub members_specialized: Vec<usize>,
    /// System polynomials vanishing on the generic family member modulo
    /// the family constraint.
    pub members_parametric: usize,
    /// Family members satisfy the component's defining polynomials.
    pub family_in_component: bool,
    /// The component's linear conditions force its lines to be joins of
    /// the family's two coordinate blocks.
    pub join_form_forced: bool,
    pub system_size: usize,
    pub expected_degree: i64,
    pub hilbert: Vec<HilbertData>,
    /// Witnesses: system polynomials that failed any membership test.
    pub failures: Vec<String>,
}

impl ComponentCheck {
    pub fn passed(&self) -> bool {
        self.members_symbolic == self.system_size
            && self.members_specialized.iter().all(|&n| n == self.system_size)
            && self.members_parametric == self.system_size
            && self.family_in_component
            && self.join_form_forced
            && self.hilbert.iter().all(|h| h.dimension == 1 && h.degree == self.expected_degree)
            && self.failures.is_empty()
    }
}

/// Whether `p` lies in the ideal generated by the single polynomial `c`.
fn divisible(p: &MPoly<RatFunc>, c: Option<&MPoly<RatFunc>>) -> bool {
    match c {
        None => p.is_zero(),
        Some(c) => p.normal_form(std::slice::from_ref(c), MonomialOrder::GrevLex).is_zero(),
    }
}

pub fn component_ideal_basis(c: &ComponentSpec, budget: usize) -> Result<GroebnerBasis<RatFunc>, GeometryError> {
    Ok(buchberger(&c.defining_polys(), MonomialOrder::GrevLex, budget)?)
}

pub fn verify_component(
    c: &ComponentSpec,
    system: &[MPoly<RatFunc>],
    alphas: &[Rational],
    budget: usize,
) -> Result<ComponentCheck, GeometryError> {
    let mut failures = Vec::new();
    let gb = component_ideal_basis(c, budget)?;
    let mut members_symbolic = 0;
    for p in system {
        if gb.contains(p) {
            members_symbolic += 1;
        } else {
            failures.push(format!("not in ideal over Q(alpha): {p}"));
        }
    }
    let mut members_specialized = Vec::new();
    let mut hilbert = Vec::new();
    for a in alphas {
        let gens: Vec<MPoly<Rational>> = c.defining_polys().iter().map(|p| p.specialize(a)).collect::<Result<_, _>>()?;
        let gb_a = buchberger(&gens, MonomialOrder::GrevLex, budget)?;
        let mut n = 0;
        for p in system {
            if gb_a.contains(&p.specialize(a)?) {
                n += 1;
            } else {
                failures.push(format!("not in ideal at alpha = {a}: {p}"));
            }
        }
        members_specialized.push(n);
        hilbert.push(gb_a.hilbert_data(6)?);
    }
    let fam = &c.family;
    let images = fam.pluecker();
    let constraint = fam.constraints.first();
    let mut members_parametric = 0;
    for p in system {
        if divisible(&p.substitute_all(&images)?, constraint) {
            members_parametric += 1;
        } else {
            failures.push(format!("not zero on the family: {p}"));
        }
    }
    let mut family_in_component = true;
    for p in c.defining_polys() {
        if !divisible(&p.substitute_all(&images)?, constraint) {
            family_in_component = false;
            failures.push(format!("family leaves the component: {p}"));
        }
    }
    let join_form_forced = c.join_conditions().iter().all(|k| c.linear.contains(k));
    Ok(ComponentCheck {
        name: c.name.to_string(),
        members_symbolic,
        members_specialized,
        members_parametric,
        family_in_component,
        join_form_forced,
        system_size: system.len(),
        expected_degree: c.degree,
        hilbert,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentsReport {
    pub components: Vec<ComponentCheck>,
    pub degree_sum: i64,
    pub passed: bool,
}

pub fn verify_components(system: &[MPoly<RatFunc>], alphas: &[Rational], budget: usize) -> Result<ComponentsReport, GeometryError> {
    let comps = components();
    let checks: Vec<ComponentCheck> =
        comps.par_iter().map(|c| verify_component(c, system, alphas, budget)).collect::<Result<_, _>>()?;
    let degree_sum = checks.iter().filter_map(|c| c.hilbert.first().map(|h| h.degree)).sum();
    let passed = checks.iter().all(ComponentCheck::passed) && degree_sum == 20;
    Ok(ComponentsReport { components: checks, degree_sum, passed })
}

/// Determinant of the diagonal Gram matrix of a diagonal quadratic form.
pub fn diagonal_gram_determinant(q: &MPoly<RatFunc>) -> Option<RatFunc> {
    let mut det = RatFunc::one();
    let mut used = 0;
    for (m, c) in q.terms() {
        let e = m.exps();
        let sq = e.iter().filter(|&&x| x == 2).count() == 1 && m.degree() == 2;
        if !sq {
            return None;
        }
        det = det.mul_ref(c);
        used += 1;
    }
    (used > 0).then_some(det)
}
