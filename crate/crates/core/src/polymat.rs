//! Matrices over polynomials and scalars: determinants, minors, echelon
//! forms and null spaces.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::multipoly::{MPoly, PolyError, VarSet};
use crate::scalars::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("minor size {size} exceeds matrix dimensions {rows}x{cols}")]
    SizeError { size: usize, rows: usize, cols: usize },
    #[error("rank undetermined: column {column} has nonzero entries but none is a unit ({entries})")]
    IndeterminateRank { column: usize, rank_so_far: usize, entries: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Dense matrix of scalars, stored as rows.
#[derive(Clone, PartialEq)]
pub struct ScalarMatrix<K> {
    rows: Vec<Vec<K>>,
    ncols: usize,
}

impl<K: Ring> ScalarMatrix<K> {
    pub fn new(rows: Vec<Vec<K>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        ScalarMatrix { rows, ncols }
    }

    pub fn with_cols(rows: Vec<Vec<K>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        ScalarMatrix { rows, ncols }
    }

    pub fn zeros(r: usize, c: usize) -> Self {
        ScalarMatrix { rows: vec![vec![K::zero(); c]; r], ncols: c }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = K::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| K::from_i64(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<K>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<K>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        ScalarMatrix { rows, ncols: self.rows.len() }
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(K::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b))))
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..rhs.ncols)
                    .map(|j| r.iter().zip(&rhs.rows).fold(K::zero(), |acc, (a, row)| acc.add_ref(&a.mul_ref(&row[j]))))
                    .collect()
            })
            .collect();
        ScalarMatrix { rows, ncols: rhs.ncols }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Determinant by Laplace expansion along the first column, memoized
    /// on row subsets.
    pub fn det_cofactor(&self) -> Result<K, MatrixError> {
        let n = self.rows.len();
        if n != self.ncols {
            return Err(MatrixError::NotSquare(n, self.ncols));
        }
        if n == 0 {
            return Ok(K::one());
        }
        let mut memo: HashMap<u64, K> = HashMap::new();
        Ok(cofactor_scalar(&self.rows, (1u64 << n) - 1, 0, &mut memo))
    }

    /// Rank by elimination that only pivots on units. Fails with
    /// [`MatrixError::IndeterminateRank`] when a column's remaining nonzero
    /// entries are all zero divisors.
    pub fn rank_unit_pivot(&self) -> Result<usize, MatrixError> {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let mut pivot = None;
            let mut stuck = Vec::new();
            for i in rank..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                match rows[i][col].try_inv() {
                    Ok(inv) => {
                        pivot = Some((i, inv));
                        break;
                    }
                    Err(_) => stuck.push(rows[i][col].to_string()),
                }
            }
            let Some((p, inv)) = pivot else {
                if stuck.is_empty() {
                    continue;
                }
                return Err(MatrixError::IndeterminateRank { column: col, rank_so_far: rank, entries: stuck.join(", ") });
            };
            rows.swap(rank, p);
            let prow: Vec<K> = rows[rank].iter().map(|x| x.mul_ref(&inv)).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for c in col..self.ncols {
                    row[c] = row[c].sub_ref(&f.mul_ref(&prow[c]));
                }
            }
            rows[rank] = prow;
            rank += 1;
        }
        Ok(rank)
    }
}

fn cofactor_scalar<K: Ring>(m: &[Vec<K>], mask: u64, col: usize, memo: &mut HashMap<u64, K>) -> K {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let n = m[0].len();
    if col == n - 1 {
        let r = mask.trailing_zeros() as usize;
        return m[r][col].clone();
    }
    let mut acc = K::zero();
    let mut sign_neg = false;
    for r in 0..m.len() {
        if mask & (1 << r) == 0 {
            continue;
        }
        if !m[r][col].is_zero() {
            let sub = cofactor_scalar(m, mask & !(1 << r), col + 1, memo);
            let t = m[r][col].mul_ref(&sub);
            acc = if sign_neg { acc.sub_ref(&t) } else { acc.add_ref(&t) };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(mask, acc.clone());
    acc
}

impl<K: Field> ScalarMatrix<K> {
    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det_bareiss(&self) -> Result<K, MatrixError> {
        let n = self.rows.len();
        if n != self.ncols {
            return Err(MatrixError::NotSquare(n, self.ncols));
        }
        let mut a = self.rows.clone();
        let mut prev = K::one();
        let mut neg = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(K::zero());
            };
            if p != k {
                a.swap(p, k);
                neg = !neg;
            }
            let prev_inv = prev.inv();
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let v = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                    a[i][j] = v.mul_ref(&prev_inv);
                }
                a[i][k] = K::zero();
            }
            prev = a[k][k].clone();
        }
        let d = if n == 0 { K::one() } else { a[n - 1][n - 1].clone() };
        Ok(if neg { d.neg_ref() } else { d })
    }

    /// Reduced row echelon form and the pivot columns (leftmost nonzero
    /// pivot in each column, rows kept in order otherwise).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][col].inv();
            let prow: Vec<K> = rows[r].iter().map(|x| x.mul_ref(&inv)).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for c in col..self.ncols {
                    if !prow[c].is_zero() {
                        row[c] = row[c].sub_ref(&f.mul_ref(&prow[c]));
                    }
                }
            }
            rows[r] = prow;
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        (ScalarMatrix { rows, ncols: self.ncols }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelon basis of the right null space: one vector per free column,
    /// with a 1 in that column and zeros in the other free columns.
    pub fn null_space(&self) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![K::zero(); self.ncols];
                v[f] = K::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.rows[i][f].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Solve `self * x = b` for one particular solution, if any exists.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows.len());
        let aug: Vec<Vec<K>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, x)| {
                let mut r = r.clone();
                r.push(x.clone());
                r
            })
            .collect();
        let (r, pivots) = ScalarMatrix::with_cols(aug, self.ncols + 1).rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![K::zero(); self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.rows[i][self.ncols].clone();
        }
        Some(x)
    }
}

impl<K: Ring> fmt::Debug for ScalarMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of polynomials over a shared variable set.
#[derive(Clone)]
pub struct PolyMatrix<C> {
    vars: Arc<VarSet>,
    rows: Vec<Vec<MPoly<C>>>,
    ncols: usize,
}

/// A minor together with the (increasing) rows and columns it uses.
#[derive(Clone)]
pub struct Minor<C> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: MPoly<C>,
}

impl<C: Ring> PolyMatrix<C> {
    pub fn new(vars: &Arc<VarSet>, rows: Vec<Vec<MPoly<C>>>) -> Result<Self, MatrixError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != ncols {
                return Err(MatrixError::SizeError { size: r.len(), rows: rows.len(), cols: ncols });
            }
            for e in r {
                if e.vars().names() != vars.names() {
                    return Err(PolyError::VarSetMismatch(vars.names().to_vec(), e.vars().names().to_vec()).into());
                }
            }
        }
        Ok(PolyMatrix { vars: vars.clone(), rows, ncols })
    }

    /// Parse a matrix from rows of polynomial text.
    pub fn parse(vars: &Arc<VarSet>, rows: &[&[&str]]) -> Result<Self, MatrixError>
    where
        C: crate::multipoly::Symbols,
    {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| MPoly::parse(s, vars)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vars, rows)
    }

    pub fn identity(vars: &Arc<VarSet>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { MPoly::one(vars) } else { MPoly::zero(vars) }).collect())
            .collect();
        PolyMatrix { vars: vars.clone(), rows, ncols: n }
    }

    /// The `len(polys) x len(vars)` matrix of partial derivatives.
    pub fn jacobian(vars: &Arc<VarSet>, polys: &[MPoly<C>], wrt: &[usize]) -> Self {
        let rows = polys.iter().map(|p| wrt.iter().map(|&v| p.derivative(v)).collect()).collect();
        PolyMatrix { vars: vars.clone(), rows, ncols: wrt.len() }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly<C> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<MPoly<C>>] {
        &self.rows
    }

    pub fn hconcat(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.nrows() != rhs.nrows() {
            return Err(MatrixError::SizeError { size: rhs.nrows(), rows: self.nrows(), cols: self.ncols });
        }
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(PolyMatrix { vars: self.vars.clone(), rows, ncols: self.ncols + rhs.ncols })
    }

    pub fn map(&self, f: impl Fn(&MPoly<C>) -> MPoly<C>) -> Self {
        let rows: Vec<Vec<MPoly<C>>> = self.rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        let vars = rows.first().and_then(|r| r.first()).map_or(self.vars.clone(), |p| p.vars().clone());
        PolyMatrix { vars, rows, ncols: self.ncols }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        PolyMatrix { vars: self.vars.clone(), rows: rows.iter().map(|&i| self.rows[i].clone()).collect(), ncols: self.ncols }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let rows = self.rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        PolyMatrix { vars: self.vars.clone(), rows, ncols: cols.len() }
    }

    /// Determinant by Laplace expansion along the leftmost column with
    /// memoization on row subsets.
    pub fn det(&self) -> Result<MPoly<C>, MatrixError> {
        let n = self.rows.len();
        if n != self.ncols {
            return Err(MatrixError::NotSquare(n, self.ncols));
        }
        Ok(self.all_maximal_minors_over(&[(0..n).collect()]).pop().expect("one minor"))
    }

    /// Determinants of the row subsets `subsets` (each of size `ncols`),
    /// sharing sub-determinants between them.
    ///
    /// Columns are consumed left to right, so every subproblem is a set of
    /// rows against a suffix of the columns; subproblems are computed level
    /// by level (rightmost column first), each level in parallel.
    fn all_maximal_minors_over(&self, subsets: &[Vec<usize>]) -> Vec<MPoly<C>> {
        let n = self.ncols;
        if n == 0 {
            return subsets.iter().map(|_| MPoly::one(&self.vars)).collect();
        }
        assert!(self.rows.len() <= 64);
        // masks needed at each level, found top-down
        let mut needed: Vec<Vec<u64>> = vec![Vec::new(); n];
        needed[0] = subsets.iter().map(|s| s.iter().fold(0u64, |m, &r| m | (1 << r))).collect();
        for col in 0..n - 1 {
            let mut next: Vec<u64> = needed[col]
                .iter()
                .flat_map(|&mask| {
                    (0..self.rows.len())
                        .filter(move |&r| mask & (1 << r) != 0 && !self.rows[r][col].is_zero())
                        .map(move |r| mask & !(1u64 << r))
                })
                .collect();
            next.sort_unstable();
            next.dedup();
            needed[col + 1] = next;
        }
        let mut below: HashMap<u64, MPoly<C>> = HashMap::new();
        for col in (0..n).rev() {
            let level: Vec<(u64, MPoly<C>)> = needed[col]
                .par_iter()
                .map(|&mask| {
                    let mut acc = MPoly::zero(&self.vars);
                    let mut neg = false;
                    for r in 0..self.rows.len() {
                        if mask & (1 << r) == 0 {
                            continue;
                        }
                        let e = &self.rows[r][col];
                        if !e.is_zero() {
                            let t = if col == n - 1 { e.clone() } else { e * &below[&(mask & !(1u64 << r))] };
                            acc = if neg { &acc - &t } else { &acc + &t };
                        }
                        neg = !neg;
                    }
                    (mask, acc)
                })
                .collect();
            below = level.into_iter().collect();
        }
        needed[0].iter().map(|m| below[m].clone()).collect()
    }

    /// All `size x size` minors, row subsets in lexicographic order and,
    /// for each, column subsets in lexicographic order.
    pub fn enumerate_minors(&self, size: usize) -> Result<Vec<Minor<C>>, MatrixError> {
        let (r, c) = (self.rows.len(), self.ncols);
        if size > r || size > c {
            return Err(MatrixError::SizeError { size, rows: r, cols: c });
        }
        let row_sets = combinations(r, size);
        let col_sets = combinations(c, size);
        let mut per_cols: Vec<Vec<MPoly<C>>> = Vec::with_capacity(col_sets.len());
        for cols in &col_sets {
            let sub = self.select_cols(cols);
            per_cols.push(sub.all_maximal_minors_over(&row_sets));
        }
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for (ri, rows) in row_sets.iter().enumerate() {
            for (ci, cols) in col_sets.iter().enumerate() {
                out.push(Minor { rows: rows.clone(), cols: cols.clone(), poly: per_cols[ci][ri].clone() });
            }
        }
        Ok(out)
    }

    /// Entry-wise evaluation at a point of some coefficient ring.
    pub fn eval_at<R: Ring>(&self, point: &[R], coerce: impl Fn(&C) -> R + Copy) -> ScalarMatrix<R> {
        let rows = self.rows.iter().map(|r| r.iter().map(|p| p.eval(point, coerce)).collect()).collect();
        ScalarMatrix { rows, ncols: self.ncols }
    }

    /// Rank after substituting `point`, by exact unit-pivot elimination.
    pub fn rank_at<R: Ring>(&self, point: &[R], coerce: impl Fn(&C) -> R + Copy) -> Result<usize, MatrixError> {
        self.eval_at(point, coerce).rank_unit_pivot()
    }
}

impl<C: Ring> fmt::Debug for Minor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {:?} cols {:?}: {}", self.rows, self.cols, self.poly)
    }
}

impl<C: Ring> PartialEq for PolyMatrix<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }
}

impl<C: Ring> fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{RatFunc, Rational, TowerElem, TowerRing};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vs(n: &[&str]) -> Arc<VarSet> {
        VarSet::new(n).unwrap()
    }

    #[test]
    fn identity_and_repeated_rows() {
        let v = vs(&["x"]);
        assert!(PolyMatrix::<RatFunc>::identity(&v, 4).det().unwrap().terms().len() == 1);
        assert_eq!(PolyMatrix::<RatFunc>::identity(&v, 4).det().unwrap(), MPoly::one(&v));
        let m = PolyMatrix::<RatFunc>::parse(&v, &[&["x", "1", "2"], &["3", "x^2", "alpha"], &["x", "1", "2"]]).unwrap();
        assert!(m.det().unwrap().is_zero());
        let m = PolyMatrix::<RatFunc>::parse(&v, &[&["x", "1"], &["3", "x"]]).unwrap();
        assert_eq!(m.det().unwrap(), MPoly::parse("x^2 - 3", &v).unwrap());
        assert!(matches!(m.select_rows(&[0]).det(), Err(MatrixError::NotSquare(1, 2))));
    }

    #[test]
    fn minor_counts() {
        let v = vs(&["x"]);
        let rows: Vec<Vec<MPoly<Rational>>> =
            (0..10).map(|i| (0..8).map(|j| MPoly::parse(&format!("{i}*x + {j}"), &v).unwrap()).collect()).collect();
        let m = PolyMatrix::new(&v, rows).unwrap();
        assert_eq!(m.enumerate_minors(8).unwrap().len(), 45);
        let small = m.select_rows(&[0, 1, 2, 3, 4, 5]).select_cols(&[0, 1, 2, 3]);
        assert_eq!(small.enumerate_minors(4).unwrap().len(), 15);
        let z = small.enumerate_minors(0).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].poly, MPoly::one(&v));
        assert!(matches!(small.enumerate_minors(5), Err(MatrixError::SizeError { .. })));
    }

    #[test]
    fn minors_match_direct_determinants() {
        let v = vs(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<Vec<MPoly<Rational>>> = (0..5)
            .map(|_| {
                (0..3)
                    .map(|_| MPoly::parse(&format!("{}*x + {}*y + {}", rng.gen_range(-3..4), rng.gen_range(-3..4), rng.gen_range(-1..2)), &v).unwrap())
                    .collect()
            })
            .collect();
        let m = PolyMatrix::new(&v, rows).unwrap();
        for minor in m.enumerate_minors(2).unwrap() {
            let sub = m.select_rows(&minor.rows).select_cols(&minor.cols);
            let direct = &(sub.get(0, 0) * sub.get(1, 1)) - &(sub.get(0, 1) * sub.get(1, 0));
            assert_eq!(minor.poly, direct);
        }
    }

    #[test]
    fn null_space_examples() {
        let id = ScalarMatrix::<Rational>::identity(4);
        assert!(id.null_space().is_empty());
        let z = ScalarMatrix::<Rational>::zeros(2, 3);
        assert_eq!(z.null_space().len(), 3);
        let m = ScalarMatrix::<Rational>::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(m.solve(&[Rational::from(1), Rational::from(2)]), Some(vec![Rational::from(1), Rational::from(0), Rational::from(0)]));
        assert_eq!(m.solve(&[Rational::from(1), Rational::from(3)]), None);
    }

    #[test]
    fn unit_pivot_rank_in_towers() {
        let t = TowerRing::<Rational>::base();
        let t = t.adjoin_sqrt(&t.constant(Rational::from(2)), "b").unwrap();
        let b = t.generator("b").unwrap();
        let two = t.constant(Rational::from(2));
        // [[b, 2], [1, b]] has det b^2 - 2 = 0 -> rank 1
        let m = ScalarMatrix::new(vec![vec![b.clone(), two.clone()], vec![t.constant(Rational::one()), b.clone()]]);
        assert_eq!(m.rank_unit_pivot(), Ok(1));
        assert_eq!(ScalarMatrix::<TowerElem<Rational>>::zeros(3, 3).rank_unit_pivot(), Ok(0));
        // b - sqrt(2)-like zero divisor: adjoin c with c^2 = 2, then b - c is a zero divisor
        let t2 = t.adjoin_sqrt(&t.constant(Rational::from(2)), "c").unwrap();
        let zd = t2.generator("b").unwrap().sub_ref(&t2.generator("c").unwrap());
        let m = ScalarMatrix::new(vec![vec![zd]]);
        assert!(matches!(m.rank_unit_pivot(), Err(MatrixError::IndeterminateRank { .. })));
    }

    #[test]
    fn bareiss_and_cofactor_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows: Vec<Vec<Rational>> = (0..4)
                .map(|_| (0..4).map(|_| Rational::new(rng.gen_range(-9..10), rng.gen_range(1..4))).collect())
                .collect();
            let m = ScalarMatrix::new(rows);
            assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
        }
    }

    fn arb_row() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
        proptest::collection::vec((-3i64..4, -3i64..4, -3i64..4), 3)
    }

    proptest! {
        #[test]
        fn det_alternating_multilinear(r0 in arb_row(), r1 in arb_row(), r2 in arb_row(), k in -4i64..5) {
            let v = vs(&["x", "y"]);
            let to = |r: &Vec<(i64, i64, i64)>| -> Vec<MPoly<Rational>> {
                r.iter().map(|(a, b, c)| MPoly::parse(&format!("{a}*x + {b}*y + {c}"), &v).unwrap()).collect()
            };
            let m = PolyMatrix::new(&v, vec![to(&r0), to(&r1), to(&r2)]).unwrap();
            let d = m.det().unwrap();
            let swapped = m.select_rows(&[1, 0, 2]).det().unwrap();
            prop_assert_eq!(swapped, d.neg());
            let kk = MPoly::constant(&v, Rational::from(k));
            let scaled = PolyMatrix::new(&v, vec![to(&r0).iter().map(|p| p * &kk).collect(), to(&r1), to(&r2)]).unwrap();
            prop_assert_eq!(scaled.det().unwrap(), d.scale(&Rational::from(k)));
            let null_ns = ScalarMatrix::new(vec![
                r0.iter().map(|t| Rational::from(t.0)).collect::<Vec<_>>(),
                r1.iter().map(|t| Rational::from(t.0)).collect::<Vec<_>>(),
            ]);
            let ns = null_ns.null_space();
            prop_assert_eq!(ns.len() + null_ns.rank(), 3);
            for vec in &ns {
                prop_assert!(null_ns.mul_vec(vec).iter().all(|x| x.is_zero()));
            }
        }
    }
}
