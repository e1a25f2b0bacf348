//! Lines in P^3 and the components of the line scheme: Pluecker
//! conversions, component membership, pairwise intersections, incidence of
//! lines with scheme points, and the smoothness and rationality checks.

mod checks;
mod components;
mod incidence;
mod intersect;
mod solve;

pub use checks::*;
pub use components::*;
pub use incidence::*;
pub use intersect::*;
pub use solve::solve_projective;

use serde::Serialize;
use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::multipoly::PolyError;
use crate::ncalg::NcError;
use crate::pointscheme::cross_minors;
use crate::polymat::MatrixError;
use crate::scalars::{Field, Ring, ScalarError, TowerElem};
use crate::towers::Surd;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("rows do not span a line: no 2x2 minor is a unit")]
    Rank,
    #[error("point is not on the Pluecker quadric")]
    NotOnPluecker,
    #[error("no Pluecker coordinate is a unit; specialize and retry")]
    NoUnitPivot,
    #[error("cannot decide whether {0} vanishes in this tower")]
    Indeterminate(String),
    #[error("cannot solve {context}: {reason}")]
    SolveFailure { context: String, reason: String },
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("{component}: {poly} does not vanish")]
    MembershipFailure { component: String, poly: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Homogeneous coordinates `(M12, M13, M14, M23, M24, M34)` of a point of
/// the Pluecker quadric.
#[derive(Clone, Debug, Serialize)]
pub struct PlueckerPoint<K: Field = crate::scalars::RatFunc> {
    coords: Vec<TowerElem<K>>,
}

impl<K: Field> PlueckerPoint<K> {
    pub fn new(coords: Vec<TowerElem<K>>) -> Result<Self, GeometryError> {
        assert_eq!(coords.len(), 6, "six Pluecker coordinates");
        if coords.iter().all(|c| c.is_zero()) || !pluecker_form(&coords).is_zero() {
            return Err(GeometryError::NotOnPluecker);
        }
        Ok(PlueckerPoint { coords })
    }

    pub fn coords(&self) -> &[TowerElem<K>] {
        &self.coords
    }

    /// Basis point `E_k` (1-based, as in `E1 = M12`).
    pub fn basis(k: usize) -> Self {
        let coords = (1..=6).map(|j| TowerElem::from_i64((j == k) as i64)).collect();
        PlueckerPoint { coords }
    }
}

/// `P = M12 M34 - M13 M24 + M14 M23` evaluated at `p`.
pub fn pluecker_form<R: Ring>(p: &[R]) -> R {
    p[0].mul_ref(&p[5]).sub_ref(&p[1].mul_ref(&p[4])).add_ref(&p[2].mul_ref(&p[3]))
}

/// A line of P^3 given by two spanning points.
#[derive(Clone, Debug, Serialize)]
pub struct LineP3<K: Field = crate::scalars::RatFunc> {
    rows: [Vec<TowerElem<K>>; 2],
}

impl<K: Field> LineP3<K> {
    /// Requires some 2x2 minor to be a unit, so the rank is two under every
    /// specialization of the tower.
    pub fn new(a: Vec<TowerElem<K>>, b: Vec<TowerElem<K>>) -> Result<Self, GeometryError> {
        assert!(a.len() == 4 && b.len() == 4, "points of P^3");
        if !cross_minors(&a, &b).iter().any(|m| m.is_unit()) {
            return Err(GeometryError::Rank);
        }
        Ok(LineP3 { rows: [a, b] })
    }

    pub fn rows(&self) -> &[Vec<TowerElem<K>>; 2] {
        &self.rows
    }

    /// Whether `p` lies on the line: all 3x3 minors of the stacked matrix
    /// vanish.
    pub fn contains(&self, p: &[TowerElem<K>]) -> bool {
        let [a, b] = &self.rows;
        crate::polymat::combinations(4, 3).iter().all(|c| {
            let m = |r: &[TowerElem<K>], i: usize| r[c[i]].clone();
            let det = m(a, 0).mul_ref(&m(b, 1).mul_ref(&m(p, 2)).sub_ref(&m(b, 2).mul_ref(&m(p, 1))))
                .sub_ref(&m(a, 1).mul_ref(&m(b, 0).mul_ref(&m(p, 2)).sub_ref(&m(b, 2).mul_ref(&m(p, 0)))))
                .add_ref(&m(a, 2).mul_ref(&m(b, 0).mul_ref(&m(p, 1)).sub_ref(&m(b, 1).mul_ref(&m(p, 0)))));
            det.is_zero()
        })
    }
}

/// The six 2x2 minors `a_i b_j - a_j b_i`.
pub fn pluecker_of_line<K: Field>(l: &LineP3<K>) -> PlueckerPoint<K> {
    let coords = cross_minors(&l.rows[0], &l.rows[1]);
    debug_assert!(pluecker_form(&coords).is_zero());
    PlueckerPoint { coords }
}

/// Index of `M_ij` (0-based `i < j`) among the six coordinates.
pub fn pair_index(i: usize, j: usize) -> usize {
    crate::linescheme::PAIRS.iter().position(|&p| p == (i, j)).expect("i < j < 4")
}

/// Signed coordinate `p_ij` for any ordered pair, with `p_ji = -p_ij`.
fn signed<R: Ring>(p: &[R], i: usize, j: usize) -> R {
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => R::zero(),
        std::cmp::Ordering::Less => p[pair_index(i, j)].clone(),
        std::cmp::Ordering::Greater => p[pair_index(j, i)].neg_ref(),
    }
}

/// A spanning pair for the line with coordinates `p`: with `p_ij` the last
/// unit coordinate, the rows `(p_i1, .., p_i4)` and `(p_j1, .., p_j4)`.
/// Their Pluecker coordinates are `p_ij * p`.
pub fn line_from_pluecker<K: Field>(p: &PlueckerPoint<K>) -> Result<LineP3<K>, GeometryError> {
    let c = &p.coords;
    let k = (0..6).rev().find(|&k| c[k].is_unit()).ok_or(GeometryError::NoUnitPivot)?;
    let (i, j) = crate::linescheme::PAIRS[k];
    let u = (0..4).map(|l| signed(c, i, l)).collect();
    let v = (0..4).map(|l| signed(c, j, l)).collect();
    LineP3::new(u, v)
}

/// `a_i b_j - a_j b_i` for polynomial vectors.
pub fn poly_cross_minors<C: Ring>(a: &[crate::multipoly::MPoly<C>], b: &[crate::multipoly::MPoly<C>]) -> Vec<crate::multipoly::MPoly<C>> {
    crate::linescheme::PAIRS.iter().map(|&(i, j)| &(&a[i] * &b[j]) - &(&a[j] * &b[i])).collect()
}

/// Move a coordinate vector into the tower holding all roots.
pub fn to_full(v: &[Surd]) -> Vec<Surd> {
    let t = crate::towers::Towers::get();
    v.iter().map(|x| t.to_full(x)).collect()
}
