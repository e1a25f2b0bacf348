//! The line scheme: the doubled Koszul-dual matrix, its 8x8 minors, their
//! rewriting in the brackets `N_ij = u_i v_j - u_j v_i`, and the passage to
//! Pluecker coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::golden::{compare_multisets, Comparison, M_VARS};
use crate::multipoly::{MPoly, Monomial, MonomialOrder, PolyError, VarSet};
use crate::ncalg::{ClearDenominators, KoszulDual, NcError, QuadAlgebra};
use crate::polymat::{combinations, MatrixError, PolyMatrix, ScalarMatrix};
use crate::scalars::{Field, Rational, Ring};

pub const UV_VARS: [&str; 8] = ["u1", "u2", "u3", "u4", "v1", "v2", "v3", "v4"];
pub const N_VARS: [&str; 6] = ["N12", "N13", "N14", "N23", "N24", "N34"];

/// Index pairs `(i, j)`, `i < j`, in the order of [`N_VARS`] and [`M_VARS`].
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LineError {
    #[error("minor is not bihomogeneous of bidegree (4, 4): {0}")]
    NotBihomogeneous(String),
    #[error("minor is not a polynomial in the brackets N_ij")]
    NotInInvariantRing,
    #[error("round trip of minor {0} does not reproduce it")]
    RoundTrip(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub fn uv_vars() -> Arc<VarSet> {
    VarSet::new(&UV_VARS).expect("distinct names")
}

pub fn n_vars() -> Arc<VarSet> {
    VarSet::new(&N_VARS).expect("distinct names")
}

pub fn m_vars() -> Arc<VarSet> {
    VarSet::new(&M_VARS).expect("distinct names")
}

/// `[M-hat(u) | M-hat(v)]`.
pub fn build_doubled_matrix<K: Field>(kd: &KoszulDual<K>) -> PolyMatrix<K> {
    let uv = uv_vars();
    let hat = kd.matrix_hat();
    let u: Vec<MPoly<K>> = (0..4).map(|i| MPoly::var(&uv, i)).collect();
    let v: Vec<MPoly<K>> = (4..8).map(|i| MPoly::var(&uv, i)).collect();
    let block = |img: &[MPoly<K>]| -> Vec<Vec<MPoly<K>>> {
        hat.rows().iter().map(|r| r.iter().map(|e| e.substitute_all(img).expect("four images")).collect()).collect()
    };
    let left = PolyMatrix::new(&uv, block(&u)).expect("rectangular");
    let right = PolyMatrix::new(&uv, block(&v)).expect("rectangular");
    left.hconcat(&right).expect("same row count")
}

/// `N_ij -> u_i v_j - u_j v_i` over the rationals.
fn bracket_images() -> Vec<MPoly<Rational>> {
    let uv = uv_vars();
    PAIRS
        .iter()
        .map(|&(i, j)| {
            let a = &MPoly::var(&uv, i) * &MPoly::var(&uv, 4 + j);
            let b = &MPoly::var(&uv, j) * &MPoly::var(&uv, 4 + i);
            &a - &b
        })
        .collect()
}

/// Monomials of degree `d` in `n` variables, in lexicographic exponent order.
pub fn monomials_of_degree(n: usize, d: u16) -> Vec<Monomial> {
    fn rec(n: usize, d: u16, i: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur.push(d);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(n, d - e, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, 0, &mut Vec::new(), &mut out);
    out
}

/// The quadratic syzygy `N12 N34 - N13 N24 + N14 N23` among the brackets.
pub fn bracket_syzygy<K: Ring>(vars: &Arc<VarSet>) -> MPoly<K> {
    let x = |i| MPoly::<K>::var(vars, i);
    &(&(&x(0) * &x(5)) - &(&x(1) * &x(4))) + &(&x(2) * &x(3))
}

/// Rewrites bidegree-(4, 4) polynomials in `u, v` as quartics in the
/// brackets, choosing the representative that is reduced modulo the
/// syzygy under grevlex.
pub struct BracketRewriter {
    nvars: Arc<VarSet>,
    uv: Arc<VarSet>,
    /// degree-4 bracket monomials not divisible by the syzygy's leading term
    standard: Vec<Monomial>,
    /// `(u, v)`-monomials whose coefficients determine a standard combination
    pivot_monomials: Vec<Monomial>,
    /// inverse of the expansion matrix restricted to the pivot monomials
    inverse: ScalarMatrix<Rational>,
}

impl Default for BracketRewriter {
    fn default() -> Self {
        Self::new()
    }
}

impl BracketRewriter {
    pub fn new() -> Self {
        let nvars = n_vars();
        let uv = uv_vars();
        let syz_lead = bracket_syzygy::<Rational>(&nvars).leading_term(MonomialOrder::GrevLex).expect("nonzero").0;
        let standard: Vec<Monomial> =
            monomials_of_degree(6, 4).into_iter().filter(|m| !syz_lead.divides(m)).collect();
        let images = bracket_images();
        let expansions: Vec<MPoly<Rational>> =
            standard.iter().map(|m| MPoly::term(&nvars, *m, Rational::one()).substitute_all(&images).expect("six images")).collect();
        let rows_index = bidegree_basis();
        // columns of the expansion matrix are the standard monomials; take
        // the transpose so independent (u, v)-monomials show up as pivots
        let mut transposed = vec![vec![Rational::zero(); rows_index.len()]; standard.len()];
        let index: HashMap<Monomial, usize> = rows_index.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        for (c, e) in expansions.iter().enumerate() {
            for (m, v) in e.terms() {
                transposed[c][index[m]] = v.clone();
            }
        }
        let (_, pivots) = ScalarMatrix::with_cols(transposed.clone(), rows_index.len()).rref();
        assert_eq!(pivots.len(), standard.len(), "standard bracket monomials expand independently");
        let square: Vec<Vec<Rational>> =
            pivots.iter().map(|&p| (0..standard.len()).map(|c| transposed[c][p].clone()).collect()).collect();
        let inverse = invert(&ScalarMatrix::new(square));
        BracketRewriter { nvars, uv, standard, pivot_monomials: pivots.iter().map(|&p| rows_index[p]).collect(), inverse }
    }

    pub fn n_vars(&self) -> &Arc<VarSet> {
        &self.nvars
    }

    pub fn standard_count(&self) -> usize {
        self.standard.len()
    }

    /// `N_ij -> u_i v_j - u_j v_i`.
    pub fn expand<K: Field>(&self, q: &MPoly<K>) -> MPoly<K> {
        let images: Vec<MPoly<K>> = bracket_images().iter().map(|p| p.map_coeffs(|c| K::from_rational(c))).collect();
        q.substitute_all(&images).expect("six images")
    }

    /// The reduced bracket quartic expanding to `minor`, verified by
    /// expanding it back.
    pub fn rewrite<K: Field>(&self, minor: &MPoly<K>) -> Result<MPoly<K>, LineError> {
        if minor.is_zero() {
            return Ok(MPoly::zero(&self.nvars));
        }
        let blocks = ([0, 1, 2, 3], [4, 5, 6, 7]);
        match minor.bidegree(&blocks.0, &blocks.1) {
            Ok((4, 4)) => {}
            _ => return Err(LineError::NotBihomogeneous(minor.to_string())),
        }
        let b: Vec<K> = self.pivot_monomials.iter().map(|m| minor.coeff(m)).collect();
        let mut q = MPoly::zero(&self.nvars);
        for (r, m) in self.inverse.rows().iter().zip(&self.standard) {
            let c = r.iter().zip(&b).fold(K::zero(), |acc, (x, y)| if x.is_zero() { acc } else { acc.add_ref(&K::from_rational(x).mul_ref(y)) });
            if !c.is_zero() {
                q.add_term(*m, &c);
            }
        }
        if self.expand(&q) != *minor {
            return Err(LineError::NotInInvariantRing);
        }
        Ok(q)
    }

    /// Dimension of the kernel of the expansion map on all 126 degree-4
    /// bracket monomials.
    pub fn kernel_dimension(&self) -> usize {
        let all = monomials_of_degree(6, 4);
        let images = bracket_images();
        let basis = bidegree_basis();
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let rows: Vec<Vec<Rational>> = all
            .iter()
            .map(|m| {
                let e = MPoly::term(&self.nvars, *m, Rational::one()).substitute_all(&images).expect("six images");
                let mut row = vec![Rational::zero(); basis.len()];
                for (mm, c) in e.terms() {
                    row[index[mm]] = c.clone();
                }
                row
            })
            .collect();
        all.len() - ScalarMatrix::with_cols(rows, basis.len()).rank()
    }

    pub fn uv(&self) -> &Arc<VarSet> {
        &self.uv
    }
}

/// Monomials of bidegree (4, 4) in `u1..u4, v1..v4`.
fn bidegree_basis() -> Vec<Monomial> {
    let us = monomials_of_degree(4, 4);
    let mut out = Vec::with_capacity(us.len() * us.len());
    for mu in &us {
        for mv in &us {
            let mut e = [0u16; 8];
            e[..4].copy_from_slice(&mu.exps()[..4]);
            e[4..].copy_from_slice(&mv.exps()[..4]);
            out.push(Monomial::from_exps(&e));
        }
    }
    out
}

fn invert<K: Field>(m: &ScalarMatrix<K>) -> ScalarMatrix<K> {
    let n = m.nrows();
    let aug: Vec<Vec<K>> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
            r
        })
        .collect();
    let (r, pivots) = ScalarMatrix::with_cols(aug, 2 * n).rref();
    assert!(pivots.len() == n && pivots[n - 1] == n - 1, "matrix is invertible");
    ScalarMatrix::new(r.rows().iter().map(|row| row[n..].to_vec()).collect())
}

/// `N12 -> M34, N13 -> -M24, N14 -> M23, N23 -> M14, N24 -> -M13, N34 -> M12`.
pub fn orthogonality_map<K: Ring>(q: &MPoly<K>) -> MPoly<K> {
    let m = m_vars();
    let x = |i| MPoly::<K>::var(&m, i);
    let images = [x(5), x(4).neg(), x(3), x(2), x(1).neg(), x(0)];
    q.substitute_all(&images).expect("six images")
}

/// `P = M12 M34 - M13 M24 + M14 M23`.
pub fn pluecker_polynomial<K: Ring>() -> MPoly<K> {
    bracket_syzygy(&m_vars())
}

/// The 8x8 minors, their bracket forms and their images in Pluecker
/// coordinates.
#[derive(Clone, Debug)]
pub struct LineSchemeSystem<K: Ring> {
    pub doubled: PolyMatrix<K>,
    /// Row subsets of the doubled matrix, one per minor.
    pub row_sets: Vec<Vec<usize>>,
    pub minors: Vec<MPoly<K>>,
    pub brackets: Vec<MPoly<K>>,
    pub quartics: Vec<MPoly<K>>,
    pub pluecker: MPoly<K>,
}

impl<K: Field> LineSchemeSystem<K> {
    /// `P` followed by the quartics, in minor order.
    pub fn polynomials(&self) -> Vec<MPoly<K>> {
        let mut out = vec![self.pluecker.clone()];
        out.extend(self.quartics.iter().cloned());
        out
    }

    /// Canonical representative: monic normal form modulo `P` under grevlex.
    pub fn canonical(&self, p: &MPoly<K>) -> MPoly<K> {
        p.normal_form(std::slice::from_ref(&self.pluecker), MonomialOrder::GrevLex).monic(MonomialOrder::GrevLex)
    }

    /// Multiset comparison with a reference list, up to scalar and modulo `P`.
    pub fn compare(&self, golden: &[MPoly<K>]) -> Comparison {
        compare_multisets(&self.polynomials(), golden, |p| self.canonical(p))
    }

    /// Indices of minors whose bracket form does not expand back exactly.
    pub fn round_trip_failures(&self, rw: &BracketRewriter) -> Vec<usize> {
        (0..self.minors.len()).into_par_iter().filter(|&k| rw.expand(&self.brackets[k]) != self.minors[k]).collect()
    }
}

pub fn line_scheme_system<K: ClearDenominators>(alg: &QuadAlgebra<K>, rw: &BracketRewriter) -> Result<LineSchemeSystem<K>, LineError> {
    let kd = alg.koszul_dual()?;
    let doubled = build_doubled_matrix(&kd);
    let size = doubled.ncols();
    let row_sets = combinations(doubled.nrows(), size);
    let minors: Vec<MPoly<K>> = doubled.enumerate_minors(size)?.into_iter().map(|m| m.poly).collect();
    let brackets: Vec<MPoly<K>> = minors.par_iter().map(|m| rw.rewrite(m)).collect::<Result<_, _>>()?;
    let quartics = brackets.iter().map(orthogonality_map).collect();
    Ok(LineSchemeSystem { doubled, row_sets, minors, brackets, quartics, pluecker: pluecker_polynomial() })
}

/// Summary of a line-scheme computation.
#[derive(Clone, Debug, Serialize)]
pub struct LineSchemeSummary {
    pub minors: usize,
    pub bidegree_ok: bool,
    pub round_trip_failures: Vec<usize>,
    pub zero_minors: usize,
    pub distinct_modulo_pluecker: usize,
}

impl<K: Field> LineSchemeSystem<K> {
    pub fn summary(&self, rw: &BracketRewriter) -> LineSchemeSummary {
        let bidegree_ok = self.minors.iter().all(|m| m.bidegree(&[0, 1, 2, 3], &[4, 5, 6, 7]) == Ok((4, 4)));
        let mut keys: Vec<String> = self.quartics.iter().map(|q| self.canonical(q).to_string()).collect();
        keys.sort();
        keys.dedup();
        LineSchemeSummary {
            minors: self.minors.len(),
            bidegree_ok,
            round_trip_failures: self.round_trip_failures(rw),
            zero_minors: self.minors.iter().filter(|m| m.is_zero()).count(),
            distinct_modulo_pluecker: keys.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RatFunc;

    #[test]
    fn doubled_matrix_shape() {
        let kd = QuadAlgebra::a_alpha().koszul_dual().unwrap();
        let m = build_doubled_matrix(&kd);
        assert_eq!((m.nrows(), m.ncols()), (10, 8));
        let uv = uv_vars();
        let row = PolyMatrix::<RatFunc>::parse(
            &uv,
            &[&["0", "alpha*u2 - 2*u4", "-2*u3", "alpha*u4", "0", "alpha*v2 - 2*v4", "-2*v3", "alpha*v4"]],
        )
        .unwrap();
        assert!(m.rows().iter().any(|r| *r == row.rows()[0]));
        // v-block is the u-block under u -> v
        let shift: Vec<MPoly<RatFunc>> = (0..8).map(|i| MPoly::var(&uv, (i + 4) % 8)).collect();
        for r in m.rows() {
            for j in 0..4 {
                assert_eq!(r[j].substitute_all(&shift).unwrap(), r[j + 4]);
            }
        }
    }

    #[test]
    fn bracket_space_dimensions() {
        let rw = BracketRewriter::new();
        assert_eq!(monomials_of_degree(6, 4).len(), 126);
        assert_eq!(bidegree_basis().len(), 1225);
        assert_eq!(rw.standard_count(), 105);
        assert_eq!(rw.kernel_dimension(), 21);
    }

    #[test]
    fn rewrite_simple_cases() {
        let rw = BracketRewriter::new();
        let uv = uv_vars();
        let n12 = MPoly::<RatFunc>::parse("u1*v2 - u2*v1", &uv).unwrap();
        let q = rw.rewrite(&n12.pow(4)).unwrap();
        assert_eq!(q.to_string(), "N12^4");
        assert!(rw.rewrite(&MPoly::<RatFunc>::zero(&uv)).unwrap().is_zero());
        // the syzygy times anything expands to zero
        let syz: MPoly<RatFunc> = bracket_syzygy(rw.n_vars());
        let n = rw.n_vars();
        assert!(rw.expand(&(&syz * &MPoly::var(n, 0).pow(2))).is_zero());
        // not bihomogeneous
        let bad = MPoly::<RatFunc>::parse("u1^4*v1^3*u2", &uv).unwrap();
        assert!(matches!(rw.rewrite(&bad), Err(LineError::NotBihomogeneous(_))));
        // bihomogeneous but not a bracket polynomial
        let bad = MPoly::<RatFunc>::parse("u1^4*v1^4", &uv).unwrap();
        assert_eq!(rw.rewrite(&bad), Err(LineError::NotInInvariantRing));
    }

    #[test]
    fn orthogonality_signs() {
        let n = n_vars();
        let p = |s: &str| MPoly::<RatFunc>::parse(s, &n).unwrap();
        let m = m_vars();
        let pm = |s: &str| MPoly::<RatFunc>::parse(s, &m).unwrap();
        assert_eq!(orthogonality_map(&p("N13*N24")), pm("M13*M24"));
        assert_eq!(orthogonality_map(&p("N12*N34 - N13*N24 + N14*N23")), pluecker_polynomial());
        assert_eq!(orthogonality_map(&p("N24^3*N13")), pm("M13^3*M24"));
    }

    #[test]
    fn normal_form_modulo_pluecker() {
        let m = m_vars();
        let p: MPoly<RatFunc> = pluecker_polynomial();
        let x = MPoly::<RatFunc>::parse("M14*M23", &m).unwrap();
        let nf = x.normal_form(std::slice::from_ref(&p), MonomialOrder::GrevLex);
        assert_eq!(nf, MPoly::parse("M13*M24 - M12*M34", &m).unwrap());
        assert_eq!(p.pow(2).len(), 6);
    }

    #[test]
    fn full_system_matches_bundled_list() {
        let rw = BracketRewriter::new();
        let sys = line_scheme_system(&QuadAlgebra::a_alpha(), &rw).unwrap();
        assert_eq!(sys.minors.len(), 45);
        let uv = uv_vars();
        let swap: Vec<MPoly<RatFunc>> = (0..8).map(|i| MPoly::var(&uv, (i + 4) % 8)).collect();
        for m in &sys.minors {
            assert_eq!(m.bidegree(&[0, 1, 2, 3], &[4, 5, 6, 7]), Ok((4, 4)));
            assert_eq!(m.substitute_all(&swap).unwrap(), *m);
        }
        assert!(sys.round_trip_failures(&rw).is_empty());
        let c = sys.compare(&crate::golden::line_quartics());
        assert!(c.matched, "{:?} / {:?}", c.unmatched_computed, c.unmatched_golden);
        let m = m_vars();
        let target = sys.canonical(&MPoly::parse("2*M13*M14*M23*M24", &m).unwrap());
        assert!(sys.quartics.iter().any(|q| sys.canonical(q) == target));
    }
}
