//! Quadratic algebras: presentations, the relation matrix, the Koszul dual,
//! low-degree quotients and intersections of degree-two right-ideal pieces.
//!
//! A relation on `n` generators is stored as a coefficient vector of length
//! `n^2`; entry `i*n + j` is the coefficient of the word `x_i x_j`.

mod parse;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::multipoly::{MPoly, PolyError, VarSet};
use crate::polymat::{MatrixError, PolyMatrix, ScalarMatrix};
use crate::scalars::{Field, RatFunc, Rational, Ring, ScalarError, UniPoly};

pub const A_ALPHA: &str = include_str!("../../fixtures/a_alpha.txt");
pub const COMMUTATIVE: &str = include_str!("../../fixtures/commutative.txt");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NcError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relation {index} has a term of degree other than two: {word}")]
    NotQuadratic { index: usize, word: String },
    #[error("relations are linearly dependent: rank {rank} of {count}")]
    RankDeficient { rank: usize, count: usize },
    #[error("point is not on the Pluecker quadric")]
    NotOnPluecker,
    #[error("field `{0}` does not allow the coefficient `{1}`")]
    FieldMismatch(String, String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Coefficient fields whose vectors can be rescaled to a primitive form
/// (no denominators, coprime content, positive leading sign).
pub trait ClearDenominators: Field {
    fn clear_denominators(row: &[Self]) -> Vec<Self>;
}

impl ClearDenominators for Rational {
    fn clear_denominators(row: &[Self]) -> Vec<Self> {
        let scale = integer_scale(row.iter());
        row.iter().map(|x| x.mul_ref(&scale)).collect()
    }
}

impl ClearDenominators for RatFunc {
    fn clear_denominators(row: &[Self]) -> Vec<Self> {
        let mut lcm = UniPoly::one();
        for x in row.iter().filter(|x| !x.is_zero()) {
            let g = lcm.gcd(x.denom());
            lcm = lcm.mul(x.denom()).div_rem(&g).0;
        }
        let nums: Vec<UniPoly<Rational>> = row.iter().map(|x| x.numer().mul(&lcm).div_rem(x.denom()).0).collect();
        let mut content = UniPoly::zero();
        for p in &nums {
            content = if content.is_zero() { p.monic() } else { content.gcd(p) };
        }
        if content.is_zero() {
            return row.to_vec();
        }
        let nums: Vec<UniPoly<Rational>> = nums.iter().map(|p| p.div_rem(&content).0).collect();
        let scale = integer_scale(nums.iter().flat_map(|p| p.coeffs().iter()));
        let sign = match nums.iter().find(|p| !p.is_zero()).and_then(|p| p.lead()) {
            Some(c) if c.is_negative() => Rational::from(-1),
            _ => Rational::one(),
        };
        let scale = scale.abs().mul_ref(&sign);
        nums.iter().map(|p| RatFunc::from_poly(p.scale(&scale))).collect()
    }
}

/// Rational `s` making all `xs` integers with gcd 1, sign chosen so the
/// first nonzero entry becomes positive.
fn integer_scale<'a>(xs: impl Iterator<Item = &'a Rational> + Clone) -> Rational {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for x in xs.clone() {
        den = den.lcm(x.denom());
        num = num.gcd(x.numer());
    }
    if num.is_zero() {
        return Rational::one();
    }
    let s = Rational::from(num_rational::BigRational::new(den, num));
    match xs.into_iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => s.neg_ref(),
        _ => s,
    }
}

/// A quadratic algebra: generators and a list of quadratic relations.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadAlgebra<K> {
    gens: Vec<String>,
    relations: Vec<Vec<K>>,
}

impl<K: Field> QuadAlgebra<K> {
    pub fn new<S: AsRef<str>>(gens: &[S], relations: Vec<Vec<K>>) -> Result<Self, NcError> {
        let n = gens.len();
        for (k, r) in relations.iter().enumerate() {
            if r.len() != n * n {
                return Err(NcError::NotQuadratic { index: k, word: format!("vector of length {}", r.len()) });
            }
        }
        Ok(QuadAlgebra { gens: gens.iter().map(|g| g.as_ref().to_string()).collect(), relations })
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &[Vec<K>] {
        &self.relations
    }

    /// The same algebra with its relations listed in a different order.
    pub fn permute_relations(&self, perm: &[usize]) -> Self {
        QuadAlgebra { gens: self.gens.clone(), relations: perm.iter().map(|&i| self.relations[i].clone()).collect() }
    }

    /// Relations as rows of an `m x n^2` matrix.
    pub fn coefficient_matrix(&self) -> ScalarMatrix<K> {
        ScalarMatrix::with_cols(self.relations.clone(), self.n() * self.n())
    }

    fn check_independent(&self) -> Result<(), NcError> {
        let rank = self.coefficient_matrix().rank();
        if rank < self.relations.len() {
            return Err(NcError::RankDeficient { rank, count: self.relations.len() });
        }
        Ok(())
    }

    pub fn vars(&self) -> Arc<VarSet> {
        VarSet::new(&self.gens).expect("generator names are distinct")
    }

    /// The matrix `M` with `M x` equal to the relations, reading `x_i x_j`
    /// left to right: `M[r][j] = sum_i c_r(i, j) x_i`.
    pub fn relation_matrix(&self) -> PolyMatrix<K> {
        linear_form_matrix(&self.vars(), &self.relations, self.n())
    }

    /// Text of relation `k` as a noncommutative polynomial.
    pub fn relation_text(&self, k: usize) -> String {
        word_text(&self.relations[k], &self.gens)
    }

    /// The Koszul dual: dual generators `z_i` and the annihilator of the
    /// relation span under `<z_i z_j, x_k x_l> = delta_ik delta_jl`, as an
    /// echelon basis with denominators cleared.
    pub fn koszul_dual(&self) -> Result<KoszulDual<K>, NcError>
    where
        K: ClearDenominators,
    {
        self.check_independent()?;
        let null = self.coefficient_matrix().null_space();
        let n2 = self.n() * self.n();
        let (echelon, _) = ScalarMatrix::with_cols(null, n2).rref();
        let relations: Vec<Vec<K>> = echelon.into_rows().iter().map(|r| K::clear_denominators(r)).collect();
        let gens: Vec<String> = (1..=self.n()).map(|i| format!("z{i}")).collect();
        Ok(KoszulDual { algebra: QuadAlgebra { gens, relations } })
    }

    /// The degree-two component `V⊗V / R`.
    pub fn degree_two(&self) -> Result<GradedQuotient<K>, NcError> {
        self.check_independent()?;
        Ok(GradedQuotient::new(self.n(), 2, self.relations.clone()))
    }

    /// The degree-three component `V⊗V⊗V / (R⊗V + V⊗R)`.
    pub fn degree_three(&self) -> Result<GradedQuotient<K>, NcError> {
        self.check_independent()?;
        let n = self.n();
        let mut rows = Vec::with_capacity(2 * n * self.relations.len());
        for r in &self.relations {
            for k in 0..n {
                let mut right = vec![K::zero(); n * n * n];
                let mut left = vec![K::zero(); n * n * n];
                for (ij, c) in r.iter().enumerate() {
                    right[ij * n + k] = c.clone();
                    left[k * n * n + ij] = c.clone();
                }
                rows.push(right);
                rows.push(left);
            }
        }
        Ok(GradedQuotient::new(n, 3, rows))
    }
}

impl QuadAlgebra<RatFunc> {
    /// Parse a presentation file:
    ///
    /// ```text
    /// gens: x1 x2 x3 x4
    /// field: Q(alpha)
    /// rel: x3*x1 + x1*x3 = 0
    /// ```
    ///
    /// `#` starts a comment. With `field: Q` coefficients must be rational.
    pub fn parse(text: &str) -> Result<Self, NcError> {
        let mut gens: Option<Vec<String>> = None;
        let mut field = String::from("Q(alpha)");
        let mut rels: Vec<(usize, &str)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(NcError::Parse { line: ln + 1, msg: "expected `key: value`".into() });
            };
            match key.trim() {
                "gens" => gens = Some(value.split_whitespace().map(str::to_string).collect()),
                "field" => field = value.trim().to_string(),
                "rel" => rels.push((ln + 1, value.trim())),
                other => return Err(NcError::Parse { line: ln + 1, msg: format!("unknown key `{other}`") }),
            }
        }
        if field != "Q" && field != "Q(alpha)" {
            return Err(NcError::Parse { line: 0, msg: format!("unsupported field `{field}`") });
        }
        let gens = gens.ok_or(NcError::Parse { line: 0, msg: "missing `gens:` line".into() })?;
        if gens.is_empty() {
            return Err(NcError::Parse { line: 0, msg: "no generators".into() });
        }
        VarSet::new(&gens).map_err(|_| NcError::Parse { line: 0, msg: "duplicate generator names".into() })?;
        let n = gens.len();
        let mut relations = Vec::with_capacity(rels.len());
        for (k, (ln, body)) in rels.into_iter().enumerate() {
            let poly = parse::parse_relation::<RatFunc>(body, &gens, ln)?;
            let mut v = vec![RatFunc::zero(); n * n];
            for (w, c) in poly {
                if w.len() != 2 {
                    let word = if w.is_empty() { "1".to_string() } else { w.iter().map(|&i| gens[i].as_str()).collect::<Vec<_>>().join("*") };
                    return Err(NcError::NotQuadratic { index: k, word });
                }
                if field == "Q" && c.as_rational().is_none() {
                    return Err(NcError::FieldMismatch(field.clone(), c.to_string()));
                }
                v[w[0] * n + w[1]] = c;
            }
            relations.push(v);
        }
        QuadAlgebra::new(&gens, relations)
    }

    /// The bundled presentation of `A(alpha)`.
    pub fn a_alpha() -> Self {
        Self::parse(A_ALPHA).expect("bundled presentation parses")
    }

    /// The polynomial ring on four generators, as a quadratic algebra.
    pub fn commutative() -> Self {
        Self::parse(COMMUTATIVE).expect("bundled presentation parses")
    }

    pub fn specialize(&self, alpha: &Rational) -> Result<QuadAlgebra<Rational>, ScalarError> {
        crate::scalars::check_generic(alpha)?;
        self.specialize_unchecked(alpha)
    }

    /// Specialization without the genericity check; poles are still errors.
    pub fn specialize_unchecked(&self, alpha: &Rational) -> Result<QuadAlgebra<Rational>, ScalarError> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().map(|c| crate::scalars::Specialize::specialize(c, alpha)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QuadAlgebra { gens: self.gens.clone(), relations })
    }
}

/// Matrix whose row `r` has entries `sum_i v_r(i*n + j) y_i`.
fn linear_form_matrix<K: Field>(vars: &Arc<VarSet>, vecs: &[Vec<K>], n: usize) -> PolyMatrix<K> {
    let rows = vecs
        .iter()
        .map(|r| {
            (0..n)
                .map(|j| {
                    let mut p = MPoly::zero(vars);
                    for i in 0..n {
                        let c = &r[i * n + j];
                        if !c.is_zero() {
                            p = &p + &MPoly::var(vars, i).scale(c);
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(vars, rows).expect("rectangular")
}

/// Human-readable noncommutative polynomial from a coefficient vector.
pub fn word_text<K: Ring>(v: &[K], gens: &[String]) -> String {
    let n = gens.len();
    let mut out = String::new();
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let word = format!("{}*{}", gens[idx / n], gens[idx % n]);
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if c.is_atomic() => (true, rest.to_string()),
            _ => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            out.push_str(&word);
        } else if c.is_atomic() {
            out.push_str(&format!("{body}*{word}"));
        } else {
            out.push_str(&format!("({body})*{word}"));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// The Koszul dual algebra, with generators `z1..zn`.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulDual<K> {
    algebra: QuadAlgebra<K>,
}

impl<K: Field> KoszulDual<K> {
    pub fn relations(&self) -> &[Vec<K>] {
        &self.algebra.relations
    }

    pub fn as_algebra(&self) -> &QuadAlgebra<K> {
        &self.algebra
    }

    /// `M-hat`, with `M-hat z` equal to the dual relations.
    pub fn matrix_hat(&self) -> PolyMatrix<K> {
        self.algebra.relation_matrix()
    }
}

/// `<f, r> = sum_ij f(i,j) r(i,j)`.
pub fn pairing<K: Ring>(f: &[K], r: &[K]) -> K {
    f.iter().zip(r).fold(K::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
}

/// A graded piece `V^{⊗d} / (relation span)` with a monomial basis.
///
/// The relation span is row-reduced with columns in lexicographic word
/// order; the basis consists of the non-pivot words.
#[derive(Clone, Debug)]
pub struct GradedQuotient<K> {
    n: usize,
    degree: u32,
    rows: Vec<Vec<K>>,
    pivots: Vec<usize>,
    basis: Vec<usize>,
}

impl<K: Field> GradedQuotient<K> {
    fn new(n: usize, degree: u32, spanning: Vec<Vec<K>>) -> Self {
        let len = n.pow(degree);
        let (r, pivots) = ScalarMatrix::with_cols(spanning, len).rref();
        let rows = r.into_rows().into_iter().take(pivots.len()).collect();
        let basis = (0..len).filter(|c| !pivots.contains(c)).collect();
        GradedQuotient { n, degree, rows, pivots, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the relation span that was factored out.
    pub fn relation_rank(&self) -> usize {
        self.pivots.len()
    }

    /// Words (as generator index sequences) forming the basis.
    pub fn basis_words(&self) -> Vec<Vec<usize>> {
        self.basis.iter().map(|&c| self.word(c)).collect()
    }

    fn word(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.degree as usize];
        for slot in w.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        w
    }

    pub fn word_index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    /// Coordinates in the basis of the image of the tensor `v`, whose
    /// entries live in any ring containing `K`.
    pub fn reduce<R: Ring>(&self, v: &[R], coerce: impl Fn(&K) -> R) -> Vec<R> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[c] = v[c].sub_ref(&f.mul_ref(&coerce(x)));
                }
            }
        }
        self.basis.iter().map(|&c| v[c].clone()).collect()
    }

    /// Image of a single word.
    pub fn image_of_word(&self, w: &[usize]) -> Vec<K> {
        let mut v = vec![K::zero(); self.n.pow(self.degree)];
        v[self.word_index(w)] = K::one();
        self.reduce(&v, |x| x.clone())
    }
}

/// Tensor `a ⊗ b` of coefficient vectors (word concatenation).
pub fn tensor<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul_ref(y));
        }
    }
    out
}

fn unit_vector<R: Ring>(n: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); n];
    v[i] = R::one();
    v
}

/// The four degree-two elements `x2^2, x3^2, x3 x4 + delta x4 x3,
/// x1 x2 + epsilon x2 x1` on four generators.
pub fn normalizing_elements<R: Ring>(delta: &R, epsilon: &R) -> Vec<Vec<R>> {
    let n = 4;
    let w = |i: usize, j: usize, c: R| {
        let mut v = vec![R::zero(); n * n];
        v[i * n + j] = c;
        v
    };
    let add = |a: Vec<R>, b: Vec<R>| a.iter().zip(&b).map(|(x, y)| x.add_ref(y)).collect::<Vec<R>>();
    vec![
        w(1, 1, R::one()),
        w(2, 2, R::one()),
        add(w(2, 3, R::one()), w(3, 2, delta.clone())),
        add(w(0, 1, R::one()), w(1, 0, epsilon.clone())),
    ]
}

/// Checks in degree three that each element of `seq` is normal modulo the
/// two-sided ideal of its predecessors: `V n + E = n V + E`, where `E` is
/// spanned by `V m` and `m V` for earlier `m`.
pub fn is_normalizing_in_degree_three<K: Field>(alg: &QuadAlgebra<K>, seq: &[Vec<K>]) -> Result<bool, NcError> {
    let d3 = alg.degree_three()?;
    let n = alg.n();
    let reduce = |v: &[K]| d3.reduce(v, |x| x.clone());
    let left = |m: &[K]| (0..n).map(|k| reduce(&tensor(&unit_vector(n, k), m))).collect::<Vec<_>>();
    let right = |m: &[K]| (0..n).map(|k| reduce(&tensor(m, &unit_vector(n, k)))).collect::<Vec<_>>();
    let rank = |rows: Vec<Vec<K>>| ScalarMatrix::with_cols(rows, d3.dim()).rank();
    let mut earlier: Vec<Vec<K>> = Vec::new();
    for m in seq {
        let (l, r) = (left(m), right(m));
        let with_l = rank([earlier.clone(), l.clone()].concat());
        let with_r = rank([earlier.clone(), r.clone()].concat());
        let with_both = rank([earlier.clone(), l.clone(), r.clone()].concat());
        if with_l != with_both || with_r != with_both {
            return Ok(false);
        }
        earlier.extend(l);
        earlier.extend(r);
    }
    Ok(true)
}

/// Linear forms vanishing on the line with Pluecker coordinates
/// `(p12, p13, p14, p23, p24, p34)`: the rows of the dual skew matrix.
/// Two of the four rows are independent on the Pluecker quadric.
pub fn pluecker_annihilator<R: Ring>(p: &[R]) -> Result<Vec<Vec<R>>, NcError> {
    assert_eq!(p.len(), 6, "six Pluecker coordinates");
    let quad = p[0].mul_ref(&p[5]).sub_ref(&p[1].mul_ref(&p[4])).add_ref(&p[2].mul_ref(&p[3]));
    if !quad.is_zero() || p.iter().all(|x| x.is_zero()) {
        return Err(NcError::NotOnPluecker);
    }
    // dual coordinates q_ij with q12 = p34, q13 = -p24, q14 = p23, ...
    let q = [p[5].clone(), p[4].neg_ref(), p[3].clone(), p[2].clone(), p[1].neg_ref(), p[0].clone()];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut m = vec![vec![R::zero(); 4]; 4];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        m[i][j] = q[k].clone();
        m[j][i] = q[k].neg_ref();
    }
    Ok(m)
}

/// Intersection of `J_2` with the degree-two part of a right ideal
/// generated by linear forms, inside a degree-two quotient.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionDim {
    pub dim: usize,
    pub dim_j: usize,
    pub dim_k: usize,
    pub dim_sum: usize,
}

pub struct RightIdealPiece<R> {
    j: Vec<Vec<R>>,
    k: Vec<Vec<R>>,
    width: usize,
}

impl<R: Ring> RightIdealPiece<R> {
    /// `J` spanned by the images of `j_elems`; `K = forms * V`.
    pub fn new<K: Field>(
        d2: &GradedQuotient<K>,
        j_elems: &[Vec<R>],
        forms: &[Vec<R>],
        coerce: impl Fn(&K) -> R + Copy,
    ) -> Self {
        let n = d2.n;
        let j = j_elems.iter().map(|v| d2.reduce(v, coerce)).collect();
        let mut k = Vec::new();
        for w in forms {
            for x in 0..n {
                k.push(d2.reduce(&tensor(w, &unit_vector(n, x)), coerce));
            }
        }
        RightIdealPiece { j, k, width: d2.dim() }
    }

    fn rank(&self, rows: Vec<Vec<R>>) -> Result<usize, NcError> {
        Ok(ScalarMatrix::with_cols(rows, self.width).rank_unit_pivot()?)
    }

    pub fn dims(&self) -> Result<IntersectionDim, NcError> {
        let dim_j = self.rank(self.j.clone())?;
        let dim_k = self.rank(self.k.clone())?;
        let dim_sum = self.rank([self.j.clone(), self.k.clone()].concat())?;
        Ok(IntersectionDim { dim: dim_j + dim_k - dim_sum, dim_j, dim_k, dim_sum })
    }

    /// Whether the reduced vector `v` lies in `J ∩ K`.
    pub fn in_intersection(&self, v: &[R]) -> Result<bool, NcError> {
        for span in [&self.j, &self.k] {
            let base = self.rank(span.clone())?;
            let mut ext = span.clone();
            ext.push(v.to_vec());
            if self.rank(ext)? != base {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `dim(J_2 ∩ K_p)` for the line with Pluecker coordinates `p`.
pub fn ideal_intersection_dim<K: Field, R: Ring>(
    alg: &QuadAlgebra<K>,
    delta: &R,
    epsilon: &R,
    p: &[R],
    coerce: impl Fn(&K) -> R + Copy,
) -> Result<IntersectionDim, NcError> {
    let d2 = alg.degree_two()?;
    let forms = pluecker_annihilator(p)?;
    RightIdealPiece::new(&d2, &normalizing_elements(delta, epsilon), &forms, coerce).dims()
}
