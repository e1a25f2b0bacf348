//! Sparse multivariate polynomials with dense exponent vectors.

mod order;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::scalars::{Field, RatFunc, Rational, Ring, ScalarError, Specialize, TowerElem};

pub use order::MonomialOrder;
pub use parse::{parse_scalar, Symbols};

/// Largest supported number of variables in one [`VarSet`].
pub const MAX_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials over different variable sets: {0:?} vs {1:?}")]
    VarSetMismatch(Vec<String>, Vec<String>),
    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("polynomial is not bihomogeneous for the given blocks")]
    NotBihomogeneous,
    #[error("variable set must have distinct names and at most {MAX_VARS} variables")]
    BadVarSet,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLead(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Exponent vector of length [`MAX_VARS`]; unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exps(e: &[u16]) -> Self {
        let mut m = [0; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Monomial(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; MAX_VARS];
        m[i] = 1;
        Monomial(m)
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(o.0) {
            *x += y;
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(o.0) {
            *x -= y;
        }
        Monomial(m)
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(o.0) {
            *x = (*x).max(y);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Self {
        let mut m = self.0;
        m[i] = e;
        Monomial(m)
    }
}

/// Ordered, named variables shared by a family of polynomials.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() || names.len() > MAX_VARS {
            return Err(PolyError::BadVarSet);
        }
        Ok(Arc::new(VarSet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Sparse polynomial: a map from exponent vector to nonzero coefficient.
#[derive(Clone)]
pub struct MPoly<C> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<C: Ring> MPoly<C> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        Self::term(vars, Monomial::one(), c)
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn term(vars: &Arc<VarSet>, m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { vars: vars.clone(), terms }
    }

    /// The variable with index `i`.
    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Self::term(vars, Monomial::var(i), C::one())
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Result<Self, PolyError> {
        let i = vars.index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_vars(&self, rhs: &Self) -> Result<(), PolyError> {
        if same_vars(&self.vars, &rhs.vars) {
            Ok(())
        } else {
            Err(PolyError::VarSetMismatch(self.vars.names.clone(), rhs.vars.names.clone()))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_vars(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_vars(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &c.neg_ref());
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_vars(rhs)?;
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let t = c1.mul_ref(c2);
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(v) => v.add_assign_ref(&t),
                    None => {
                        acc.insert(m, t);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MPoly { vars: self.vars.clone(), terms })
    }

    pub fn neg(&self) -> Self {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (*m, x.mul_ref(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, x)| (k.mul(m), x.mul_ref(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Largest term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self, order: MonomialOrder) -> Option<&C> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Terms sorted in decreasing `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, &C)> {
        let mut v: Vec<(Monomial, &C)> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn try_map_coeffs<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<MPoly<D>, E> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(*m, d);
            }
        }
        Ok(MPoly { vars: self.vars.clone(), terms })
    }

    /// Same terms, reinterpreted over another variable set of at least the
    /// same length (variable `k` goes to slot `k`).
    pub fn with_vars(&self, vars: &Arc<VarSet>) -> Self {
        assert!(vars.len() >= self.vars.len());
        MPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Move variables by name into another variable set.
    pub fn rename_into(&self, vars: &Arc<VarSet>) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self.vars.names.iter().map(|n| vars.index(n)).collect();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            for (i, &x) in m.exps().iter().enumerate().take(self.vars.len()) {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.vars.names[i].clone()))?;
                e[j] += x;
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    /// Evaluate at a point of any ring the coefficients map into.
    pub fn eval<R: Ring>(&self, point: &[R], coerce: impl Fn(&C) -> R) -> R {
        assert_eq!(point.len(), self.vars.len(), "point dimension mismatch");
        let mut powers: Vec<Vec<R>> = point.iter().map(|x| vec![R::one(), x.clone()]).collect();
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = coerce(c);
            for (i, &e) in m.exps().iter().enumerate().take(point.len()) {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_ref(&point[i]);
                    powers[i].push(next);
                }
                t = t.mul_ref(&powers[i][e]);
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Image under the homomorphism sending variable `k` to `images[k]`.
    pub fn substitute_all(&self, images: &[MPoly<C>]) -> Result<MPoly<C>, PolyError> {
        let target = images.first().map(|p| p.vars.clone()).ok_or(PolyError::BadVarSet)?;
        if images.len() != self.vars.len() {
            return Err(PolyError::BadVarSet);
        }
        for p in images {
            if !same_vars(&p.vars, &target) {
                return Err(PolyError::VarSetMismatch(target.names.clone(), p.vars.names.clone()));
            }
        }
        Ok(self.compose(images, &target))
    }

    /// Substitute named variables. Variables that occur in `self` must all
    /// be assigned; the images share one target variable set.
    pub fn substitute(&self, assignment: &HashMap<String, MPoly<C>>, target: &Arc<VarSet>) -> Result<MPoly<C>, PolyError> {
        let mut used = [false; MAX_VARS];
        for m in self.terms.keys() {
            for (i, u) in used.iter_mut().enumerate() {
                *u |= m.exp(i) > 0;
            }
        }
        let mut images = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names.iter().enumerate() {
            match assignment.get(name) {
                Some(p) => {
                    if !same_vars(&p.vars, target) {
                        return Err(PolyError::VarSetMismatch(target.names.clone(), p.vars.names.clone()));
                    }
                    images.push(p.clone());
                }
                None if used[i] => return Err(PolyError::MissingAssignment(name.clone())),
                None => images.push(MPoly::zero(target)),
            }
        }
        if images.is_empty() {
            return Ok(MPoly { vars: target.clone(), terms: self.terms.clone() });
        }
        Ok(self.compose(&images, target))
    }

    fn compose(&self, images: &[MPoly<C>], target: &Arc<VarSet>) -> MPoly<C> {
        let mut powers: Vec<Vec<MPoly<C>>> = images.iter().map(|x| vec![MPoly::one(target), x.clone()]).collect();
        let mut acc = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate().take(images.len()) {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            for (tm, tc) in t.terms {
                acc.add_term(tm, &tc);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), &c.mul_ref(&C::from_i64(e as i64)));
            }
        }
        out
    }

    /// Degrees in two blocks of variables, if every term has the same pair.
    pub fn bidegree(&self, block1: &[usize], block2: &[usize]) -> Result<(u32, u32), PolyError> {
        let mut seen = vec![false; self.vars.len()];
        for &i in block1.iter().chain(block2) {
            if i >= seen.len() || seen[i] {
                return Err(PolyError::BadVarSet);
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(PolyError::BadVarSet);
        }
        let deg = |m: &Monomial, b: &[usize]| b.iter().map(|&i| m.exp(i) as u32).sum::<u32>();
        let mut out = None;
        for m in self.terms.keys() {
            let d = (deg(m, block1), deg(m, block2));
            match out {
                None => out = Some(d),
                Some(o) if o != d => return Err(PolyError::NotBihomogeneous),
                _ => {}
            }
        }
        Ok(out.unwrap_or((0, 0)))
    }

    /// Multivariate division by `divisors` under `order`: returns the
    /// quotients and the remainder, no term of which is divisible by a
    /// divisor's leading term. Leading coefficients must be units.
    pub fn divide(&self, divisors: &[MPoly<C>], order: MonomialOrder) -> Result<(Vec<MPoly<C>>, MPoly<C>), PolyError> {
        let mut leads = Vec::with_capacity(divisors.len());
        for d in divisors {
            self.check_vars(d)?;
            let (m, c) = d.leading_term(order).ok_or(ScalarError::DivisionByZero)?;
            let inv = c.try_inv().map_err(|_| PolyError::NonUnitLead(c.to_string()))?;
            leads.push((m, inv));
        }
        let mut quotients: Vec<MPoly<C>> = divisors.iter().map(|_| Self::zero(&self.vars)).collect();
        let mut rem = Self::zero(&self.vars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m, c.clone())) {
            match leads.iter().position(|(lm, _)| lm.divides(&m)) {
                Some(k) => {
                    let q = m.div(&leads[k].0);
                    let f = c.mul_ref(&leads[k].1);
                    quotients[k].add_term(q, &f);
                    let sub = divisors[k].mul_monomial(&q, &f);
                    for (sm, sc) in &sub.terms {
                        p.add_term(*sm, &sc.neg_ref());
                    }
                    // exact cancellation of the leading term even for rings
                    p.terms.remove(&m);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, &c);
                }
            }
        }
        Ok((quotients, rem))
    }

    /// Remainder of [`MPoly::divide`].
    pub fn try_normal_form(&self, divisors: &[MPoly<C>], order: MonomialOrder) -> Result<MPoly<C>, PolyError> {
        self.divide(divisors, order).map(|(_, r)| r)
    }

    /// Canonical text with terms in decreasing `order`.
    pub fn to_string_with(&self, order: MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let mono = self.fmt_monomial(&m);
            let term = if mono.is_empty() {
                if c.is_atomic() {
                    c.to_string()
                } else {
                    format!("({c})")
                }
            } else if c.is_one() {
                mono
            } else if c.neg_ref().is_one() {
                format!("-{mono}")
            } else if c.is_atomic() {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
            };
            if k == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.vars.names.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl<C: Field> MPoly<C> {
    pub fn normal_form(&self, divisors: &[MPoly<C>], order: MonomialOrder) -> MPoly<C> {
        self.try_normal_form(divisors, order).expect("field division cannot fail")
    }

    /// Scaled so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> MPoly<C> {
        match self.leading_coeff(order) {
            None => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn proportional(&self, other: &Self, order: MonomialOrder) -> bool {
        self.monic(order) == other.monic(order)
    }
}

impl<C: Specialize> MPoly<C> {
    pub fn specialize(&self, alpha: &Rational) -> Result<MPoly<C::Output>, ScalarError> {
        self.try_map_coeffs(|c| c.specialize(alpha))
    }
}

impl MPoly<Rational> {
    pub fn to_ratfunc(&self) -> MPoly<RatFunc> {
        self.map_coeffs(|c| RatFunc::from(c.clone()))
    }
}

impl<K: Field> MPoly<K> {
    pub fn to_tower(&self) -> MPoly<TowerElem<K>> {
        self.map_coeffs(|c| TowerElem::from_base(c.clone()))
    }
}

impl<C: Ring> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(MonomialOrder::GrevLex))
    }
}

impl<C: Ring> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Ring> Serialize for MPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<C: Ring> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: Self) -> MPoly<C> {
        self.try_add(rhs).expect("variable set mismatch")
    }
}

impl<C: Ring> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: Self) -> MPoly<C> {
        self.try_sub(rhs).expect("variable set mismatch")
    }
}

impl<C: Ring> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: Self) -> MPoly<C> {
        self.try_mul(rhs).expect("variable set mismatch")
    }
}

impl<C: Ring> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vs(names: &[&str]) -> Arc<VarSet> {
        VarSet::new(names).unwrap()
    }

    fn p(vars: &Arc<VarSet>, s: &str) -> MPoly<RatFunc> {
        MPoly::parse(s, vars).unwrap()
    }

    fn m_vars() -> Arc<VarSet> {
        vs(&["M12", "M13", "M14", "M23", "M24", "M34"])
    }

    #[test]
    fn basic_arithmetic() {
        let v = vs(&["x1", "x2"]);
        assert_eq!(&p(&v, "x1 + x2") * &p(&v, "x1 - x2"), p(&v, "x1^2 - x2^2"));
        let zero = MPoly::<RatFunc>::zero(&v);
        assert!((&zero * &p(&v, "x1 + 3")).terms().is_empty());
        let other = vs(&["y"]);
        assert!(matches!(
            p(&v, "x1").try_add(&p(&other, "y")),
            Err(PolyError::VarSetMismatch(..))
        ));
    }

    #[test]
    fn pluecker_square_has_six_terms() {
        // (a - b + c)^2 with pairwise coprime monomials: 3 squares + 3 cross terms
        let v = m_vars();
        let pl = p(&v, "M12*M34 - M13*M24 + M14*M23");
        assert_eq!(pl.pow(2).len(), 6);
    }

    #[test]
    fn normal_form_examples() {
        let v = m_vars();
        let pl = p(&v, "M12*M34 - M13*M24 + M14*M23");
        let o = MonomialOrder::GrevLex;
        assert!(pl.normal_form(std::slice::from_ref(&pl), o).is_zero());
        // leading term of P under grevlex is M14*M23
        assert_eq!(pl.leading_term(o).unwrap().0, Monomial::from_exps(&[0, 0, 1, 1, 0, 0]));
        let nf = p(&v, "M14*M23").normal_form(std::slice::from_ref(&pl), o);
        assert_eq!(nf, p(&v, "M13*M24 - M12*M34"));
        // M12*M34 is already reduced (not divisible by M14*M23)
        let m = p(&v, "M12*M34");
        assert_eq!(m.normal_form(std::slice::from_ref(&pl), o), m);
        let one = MPoly::one(&v);
        assert!(p(&v, "M12^3 + alpha*M13").normal_form(&[one], o).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let v = vs(&["x1", "x2", "x3", "x4"]);
        let f = p(&v, "x1*x3*(x2 - x4)*(x2 + x4)");
        let w = vs(&["x1", "x2", "x3", "x4"]);
        let mut asg: HashMap<String, MPoly<RatFunc>> = HashMap::new();
        asg.insert("x1".into(), p(&w, "x1"));
        asg.insert("x2".into(), p(&w, "1"));
        asg.insert("x3".into(), p(&w, "x3"));
        asg.insert("x4".into(), p(&w, "1"));
        assert!(f.substitute(&asg, &w).unwrap().is_zero());
        asg.remove("x3");
        assert_eq!(f.substitute(&asg, &w), Err(PolyError::MissingAssignment("x3".into())));
        let id: Vec<MPoly<RatFunc>> = (0..4).map(|i| MPoly::var(&v, i)).collect();
        assert_eq!(f.substitute_all(&id).unwrap(), f);
    }

    #[test]
    fn bidegree_examples() {
        let v = vs(&["u1", "u2", "v1", "v2"]);
        let (bu, bv) = ([0, 1], [2, 3]);
        assert_eq!(p(&v, "u1*v2 - u2*v1").bidegree(&bu, &bv), Ok((1, 1)));
        assert_eq!(p(&v, "u1^2 + v1").bidegree(&bu, &bv), Err(PolyError::NotBihomogeneous));
    }

    #[test]
    fn display_round_trip() {
        let v = vs(&["x", "y"]);
        let f = p(&v, "(alpha^2 + 1)/(alpha - 2)*x^2*y - alpha*y^3 + 1/2*x - 3");
        let s = f.to_string();
        assert_eq!(p(&v, &s), f);
        assert_eq!(s, "((alpha^2 + 1)/(alpha - 2))*x^2*y - alpha*y^3 + 1/2*x - 3");
    }

    fn arb_poly(vars: Arc<VarSet>) -> impl Strategy<Value = MPoly<Rational>> {
        let n = vars.len();
        proptest::collection::vec((proptest::collection::vec(0u16..3, n), -5i64..6), 0..6).prop_map(move |ts| {
            MPoly::from_terms(&vars, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), Rational::from(c))))
        })
    }

    proptest! {
        #[test]
        fn division_identity(
            f in arb_poly(VarSet::new(&["x", "y", "z"]).unwrap()),
            d1 in arb_poly(VarSet::new(&["x", "y", "z"]).unwrap()),
            d2 in arb_poly(VarSet::new(&["x", "y", "z"]).unwrap()),
        ) {
            let divisors: Vec<_> = [d1, d2].into_iter().filter(|d| !d.is_zero()).collect();
            for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
                let (qs, r) = f.divide(&divisors, order).unwrap();
                let mut acc = r.clone();
                for (q, d) in qs.iter().zip(&divisors) {
                    acc = &acc + &(q * d);
                }
                prop_assert_eq!(&acc, &f);
                for m in r.terms().keys() {
                    for d in &divisors {
                        prop_assert!(!d.leading_term(order).unwrap().0.divides(m));
                    }
                }
            }
        }

        #[test]
        fn substitution_is_homomorphism(
            f in arb_poly(VarSet::new(&["x", "y"]).unwrap()),
            g in arb_poly(VarSet::new(&["x", "y"]).unwrap()),
            s in arb_poly(VarSet::new(&["x", "y"]).unwrap()),
            t in arb_poly(VarSet::new(&["x", "y"]).unwrap()),
        ) {
            let images = [s, t];
            let lhs = (&f * &g).substitute_all(&images).unwrap();
            let rhs = &f.substitute_all(&images).unwrap() * &g.substitute_all(&images).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = (&f + &g).substitute_all(&images).unwrap();
            let rhs = &f.substitute_all(&images).unwrap() + &g.substitute_all(&images).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_form_round_trips(f in arb_poly(VarSet::new(&["x", "y", "z"]).unwrap())) {
            let g: MPoly<Rational> = MPoly::parse(&f.to_string(), f.vars()).unwrap();
            prop_assert_eq!(g, f);
        }
    }
}
