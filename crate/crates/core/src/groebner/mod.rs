//! Buchberger's algorithm over exact fields, and Hilbert data of
//! homogeneous ideals read off the leading-term ideal.

mod hilbert;

use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{MPoly, Monomial, MonomialOrder, PolyError, VarSet};
use crate::scalars::Field;

pub use hilbert::{hilbert_numerator, HilbertData};

/// Default cap on the number of S-pair reductions.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-pair budget of {budget} exhausted: basis has {basis_size} elements, {pending} pairs pending")]
    ResourceLimit { budget: usize, basis_size: usize, pending: usize, reductions: usize },
    #[error("ideal is not homogeneous: generator {0} is inhomogeneous")]
    NotHomogeneous(usize),
    #[error("no generators given")]
    Empty,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A reduced Gröbner basis: monic, interreduced, sorted by decreasing
/// leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis<C> {
    order: MonomialOrder,
    vars: Arc<VarSet>,
    basis: Vec<MPoly<C>>,
    stats: GroebnerStats,
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_considered: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
}

impl<C: Field> std::fmt::Debug for GroebnerBasis<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("basis", &self.basis).finish()
    }
}

type Terms<C> = Vec<(Monomial, C)>;

impl<C: Field> GroebnerBasis<C> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn basis(&self) -> &[MPoly<C>] {
        &self.basis
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_term(self.order).expect("nonzero").0).collect()
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &MPoly<C>) -> MPoly<C> {
        let gs: Vec<Terms<C>> = self.basis.iter().map(|g| sorted(g, self.order)).collect();
        let r = reduce_full(sorted(p, self.order), &gs, self.order, false);
        MPoly::from_terms(p.vars(), r)
    }

    pub fn contains(&self, p: &MPoly<C>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Re-check from scratch that every S-polynomial reduces to zero
    /// (pairs with coprime leading monomials are skipped, which is a
    /// theorem rather than bookkeeping from the construction).
    pub fn verify(&self) -> bool {
        let gs: Vec<Terms<C>> = self.basis.iter().map(|g| sorted(g, self.order)).collect();
        let pairs: Vec<(usize, usize)> =
            (0..gs.len()).flat_map(|i| ((i + 1)..gs.len()).map(move |j| (i, j))).collect();
        pairs.par_iter().all(|&(i, j)| {
            if gs[i][0].0.is_coprime(&gs[j][0].0) {
                return true;
            }
            reduce_full(s_poly(&gs[i], &gs[j], self.order), &gs, self.order, true).is_empty()
        })
    }

    /// Hilbert data of the ideal (which must be homogeneous), computed from
    /// the leading-term ideal.
    pub fn hilbert_data(&self, num_vars: usize) -> Result<HilbertData, GroebnerError> {
        if let Some(i) = self.basis.iter().position(|g| !g.is_homogeneous()) {
            return Err(GroebnerError::NotHomogeneous(i));
        }
        Ok(HilbertData::from_leading_monomials(&self.leading_monomials(), num_vars))
    }
}

/// True iff `p` lies in the ideal with Gröbner basis `gb`.
pub fn ideal_membership<C: Field>(p: &MPoly<C>, gb: &GroebnerBasis<C>) -> bool {
    gb.contains(p)
}

fn sorted<C: Field>(p: &MPoly<C>, order: MonomialOrder) -> Terms<C> {
    p.sorted_terms(order).into_iter().map(|(m, c)| (m, c.clone())).collect()
}

fn make_monic<C: Field>(t: &mut Terms<C>) {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.inv();
            for (_, x) in t.iter_mut() {
                *x = x.mul_ref(&inv);
            }
        }
    }
}

/// `p[start..] - c * m * g[1..]`, both sorted decreasingly; the leading
/// terms of `p[start - 1]` and `c*m*g[0]` are assumed to cancel.
fn sub_scaled_tail<C: Field>(p: &[(Monomial, C)], c: &C, m: &Monomial, g: &[(Monomial, C)], order: MonomialOrder) -> Terms<C> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 1;
    while i < p.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match order.cmp(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, g[j].1.mul_ref(c).neg_ref()));
                j += 1;
            }
            Ordering::Equal => {
                let v = p[i].1.sub_ref(&g[j].1.mul_ref(c));
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    while j < g.len() {
        out.push((g[j].0.mul(m), g[j].1.mul_ref(c).neg_ref()));
        j += 1;
    }
    out
}

/// Reduce `f` by monic, sorted divisors. With `top_only_zero_check`, stop
/// as soon as an irreducible leading term is found (the result is then
/// nonempty iff `f` does not reduce to zero).
fn reduce_full<C: Field>(mut f: Terms<C>, gs: &[Terms<C>], order: MonomialOrder, top_only_zero_check: bool) -> Terms<C> {
    let mut rem: Terms<C> = Vec::new();
    let mut start = 0;
    while start < f.len() {
        let (m, c) = &f[start];
        match gs.iter().find(|g| g[0].0.divides(m)) {
            Some(g) => {
                let q = m.div(&g[0].0);
                let lc_inv = g[0].1.inv();
                let coef = c.mul_ref(&lc_inv);
                f = sub_scaled_tail(&f[start + 1..], &coef, &q, g, order);
                start = 0;
            }
            None => {
                if top_only_zero_check {
                    return vec![f[start].clone()];
                }
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn s_poly<C: Field>(f: &Terms<C>, g: &Terms<C>, order: MonomialOrder) -> Terms<C> {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0);
    let mg = l.div(&g[0].0);
    let finv = f[0].1.inv();
    let ginv = g[0].1.inv();
    // (l/lf)*f/cf - (l/lg)*g/cg with leading terms cancelled
    let fs: Terms<C> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.mul_ref(&finv))).collect();
    let mut lead = vec![(l, C::one())];
    lead.extend(fs);
    sub_scaled_tail(&lead[1..], &ginv, &mg, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (smallest lcm under the order,
/// ties broken by creation order) and pruned with the Gebauer–Möller
/// installation of Buchberger's coprime and chain criteria. `budget` caps
/// the number of S-polynomial reductions.
pub fn buchberger<C: Field>(gens: &[MPoly<C>], order: MonomialOrder, budget: usize) -> Result<GroebnerBasis<C>, GroebnerError> {
    let vars = gens.first().ok_or(GroebnerError::Empty)?.vars().clone();
    let mut stats = GroebnerStats::default();
    let mut polys: Vec<Terms<C>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // interreduce the input first so the initial basis is small
    let mut input: Vec<Terms<C>> = gens.iter().filter(|g| !g.is_zero()).map(|g| sorted(g, order)).collect();
    input.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for f in input {
        let current: Vec<Terms<C>> = active_polys(&polys, &active);
        let mut h = reduce_full(f, &current, order, false);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        insert(&mut polys, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order.cmp(&pa.lcm, &pb.lcm).then((pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .expect("nonempty");
        let p = pairs.swap_remove(k);
        stats.pairs_considered += 1;
        if stats.reductions >= budget {
            return Err(GroebnerError::ResourceLimit {
                budget,
                basis_size: active.iter().filter(|a| **a).count(),
                pending: pairs.len() + 1,
                reductions: stats.reductions,
            });
        }
        stats.reductions += 1;
        let current = active_polys(&polys, &active);
        let mut h = reduce_full(s_poly(&polys[p.i], &polys[p.j], order), &current, order, false);
        if h.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        make_monic(&mut h);
        if stats.reductions % 500 == 0 {
            log::debug!(
                "buchberger: {} reductions, basis {}, pending {}, degree {}",
                stats.reductions,
                current.len() + 1,
                pairs.len(),
                h[0].0.degree()
            );
        }
        insert(&mut polys, &mut active, &mut pairs, h);
    }

    let basis = interreduce(active_polys(&polys, &active), order);
    let basis = basis.into_iter().map(|t| MPoly::from_terms(&vars, t)).collect();
    Ok(GroebnerBasis { order, vars, basis, stats })
}

fn active_polys<C: Field>(polys: &[Terms<C>], active: &[bool]) -> Vec<Terms<C>> {
    polys.iter().zip(active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect()
}

/// Gebauer–Möller update with the new element `h`.
fn insert<C: Field>(polys: &mut Vec<Terms<C>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Terms<C>) {
    let hn = polys.len();
    let lh = h[0].0;
    let cand: Vec<Pair> = (0..hn)
        .filter(|&g| active[g])
        .map(|g| Pair { i: g, j: hn, lcm: polys[g][0].0.lcm(&lh) })
        .collect();
    // chain criterion among the new pairs: keep a pair unless another new
    // pair has a strictly dividing lcm (or an equal lcm and comes first)
    let mut keep: Vec<Pair> = Vec::new();
    for (a, p) in cand.iter().enumerate() {
        let dominated = cand.iter().enumerate().any(|(b, q)| {
            b != a && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || b < a)
        });
        if !dominated {
            keep.push(p.clone());
        }
    }
    // drop pairs whose leading monomials are coprime (after the chain
    // pruning, as Gebauer–Möller prescribes)
    keep.retain(|p| !polys[p.i][0].0.is_coprime(&lh));
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && polys[p.i][0].0.lcm(&lh) != p.lcm
            && polys[p.j][0].0.lcm(&lh) != p.lcm)
    });
    pairs.extend(keep);
    for g in 0..hn {
        if active[g] && lh.divides(&polys[g][0].0) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

fn interreduce<C: Field>(mut gs: Vec<Terms<C>>, order: MonomialOrder) -> Vec<Terms<C>> {
    gs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    // minimal: drop elements whose leading monomial is divisible by another's
    let lms: Vec<Monomial> = gs.iter().map(|g| g[0].0).collect();
    let minimal: Vec<Terms<C>> = gs
        .into_iter()
        .enumerate()
        .filter(|(i, g)| !lms.iter().enumerate().any(|(j, m)| j != *i && m.divides(&g[0].0) && (m != &g[0].0 || j < *i)))
        .map(|(_, g)| g)
        .collect();
    let mut out: Vec<Terms<C>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms<C>> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
        let lead = minimal[k][0].clone();
        let mut tail = reduce_full(minimal[k][1..].to_vec(), &others, order, false);
        let mut g = vec![lead];
        g.append(&mut tail);
        make_monic(&mut g);
        out.push(g);
    }
    out.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    out
}
