//! Exact exterior algebra for differential forms on Euclidean space with
//! multivariate-polynomial coefficients.
//!
//! A [`PolyForm`] of degree `k` on `R^m` is a map from strictly increasing
//! multi-indices to rational-coefficient polynomials. Wedge products,
//! exterior derivatives and linear pullbacks are computed exactly;
//! [`PolyForm::evaluate`] provides pointwise multilinear evaluation in `f64`
//! for quadrature.

mod json;
mod poly;

pub use json::PolyFormRepr;
pub use poly::{rational_from_f64, rational_to_f64, Exponents, Polynomial};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("wedge degree overflow: {degree} exceeds ambient dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("arity mismatch: degree-{expected} form applied to {got} vectors")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),
    #[error("invalid form data: {0}")]
    InvalidForm(String),
}

/// Strictly increasing list of coordinate indices in `1..=m`, keying one
/// basis term `dx_{i_1} ∧ … ∧ dx_{i_k}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(indices: Vec<u8>, dim: usize) -> Result<Self, FormError> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(FormError::InvalidMultiIndex(format!(
                    "indices not strictly increasing: {:?}",
                    indices
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last as usize > dim {
                return Err(FormError::InvalidMultiIndex(format!(
                    "index {} exceeds ambient dimension {}",
                    last, dim
                )));
            }
        }
        if indices.first().map_or(false, |&f| f == 0) {
            return Err(FormError::InvalidMultiIndex("indices are 1-based".into()));
        }
        Ok(MultiIndex(indices))
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    /// Merge two disjoint multi-indices, returning the permutation sign, or
    /// `None` if they share an index.
    fn merge(&self, other: &MultiIndex) -> Option<(i32, MultiIndex)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut sign = 1i32;
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] moves past the remaining a[i..]
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((sign, MultiIndex(out)))
    }

    /// Insert a single index, returning the sign `(-1)^{#{j in self : j < i}}`.
    fn insert(&self, idx: u8) -> Option<(i32, MultiIndex)> {
        MultiIndex(vec![idx]).merge(self)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx{:?}", self.0)
    }
}

/// Exterior differential form with polynomial coefficients.
///
/// Invariants: every key has length `degree`; no zero coefficient
/// polynomials are stored. A form of degree `> m` is necessarily zero (no
/// valid multi-index exists) but the degree is still recorded, so that the
/// exterior derivative of a top-degree form is representable.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl PolyForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        PolyForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form from a polynomial.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let dim = p.vars();
        let mut form = Self::zero(dim, 0);
        if !p.is_zero() {
            form.terms.insert(MultiIndex::empty(), p);
        }
        form
    }

    /// Basis 1-form `dx_i`, 1-based.
    pub fn dx(dim: usize, i: usize) -> Self {
        let mut form = Self::zero(dim, 1);
        let idx = MultiIndex::new(vec![i as u8], dim).expect("valid basis index");
        form.terms.insert(idx, Polynomial::one(dim));
        form
    }

    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Polynomial)>,
    ) -> Result<Self, FormError> {
        let mut form = Self::zero(dim, degree);
        for (idx, poly) in terms {
            if idx.degree() != degree {
                return Err(FormError::InvalidForm(format!(
                    "term {:?} has degree {}, form has degree {}",
                    idx,
                    idx.degree(),
                    degree
                )));
            }
            if let Some(&last) = idx.indices().last() {
                if last as usize > dim {
                    return Err(FormError::InvalidMultiIndex(format!(
                        "index {} exceeds dimension {}",
                        last, dim
                    )));
                }
            }
            if poly.vars() != dim {
                return Err(FormError::InvalidForm(
                    "coefficient variable count differs from ambient dimension".into(),
                ));
            }
            form.add_term(idx, poly);
        }
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total degree among coefficient polynomials.
    pub fn coefficient_degree(&self) -> usize {
        self.terms
            .values()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, idx: MultiIndex, poly: Polynomial) {
        if poly.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(poly);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&poly);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(FormError::InvalidForm(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (idx, poly) in &other.terms {
            out.add_term(idx.clone(), poly.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Multiply all coefficients by an exact rational.
    pub fn scale(&self, c: &BigRational) -> PolyForm {
        let mut out = Self::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (idx, poly) in &self.terms {
            out.terms.insert(idx.clone(), poly.scale(c));
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> PolyForm {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Scale by a finite real; every finite `f64` is an exact binary
    /// rational, so this stays in the exact coefficient ring.
    pub fn scale_f64(&self, c: f64) -> Result<PolyForm, FormError> {
        let r = rational_from_f64(c)
            .ok_or_else(|| FormError::InvalidForm(format!("non-finite scale {c}")))?;
        Ok(self.scale(&r))
    }

    /// Wedge product. Errors if the ambient dimensions differ or the result
    /// degree would exceed the ambient dimension.
    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(FormError::DegreeOverflow {
                degree,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim, degree);
        for (ia, pa) in &self.terms {
            for (ib, pb) in &other.terms {
                if let Some((sign, idx)) = ia.merge(ib) {
                    let mut poly = pa.mul(pb);
                    if sign < 0 {
                        poly = poly.neg();
                    }
                    out.add_term(idx, poly);
                }
            }
        }
        Ok(out)
    }

    /// `n`-fold wedge power. `power(0)` is the constant 0-form 1.
    pub fn wedge_power(&self, n: usize) -> Result<PolyForm, FormError> {
        let mut acc = PolyForm::from_polynomial(Polynomial::one(self.dim));
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Exterior derivative. Total: on a top-degree form it returns the zero
    /// form of degree `k + 1` with the degree recorded.
    pub fn exterior_derivative(&self) -> PolyForm {
        let mut out = Self::zero(self.dim, self.degree + 1);
        if self.degree >= self.dim {
            return out;
        }
        for (idx, poly) in &self.terms {
            for i in 1..=self.dim {
                let dp = poly.partial(i);
                if dp.is_zero() {
                    continue;
                }
                if let Some((sign, new_idx)) = idx.insert(i as u8) {
                    let term = if sign < 0 { dp.neg() } else { dp };
                    out.add_term(new_idx, term);
                }
            }
        }
        out
    }

    /// Pointwise evaluation on `k` vectors: multilinear, alternating, equal
    /// to the coefficient-weighted determinant expansion.
    pub fn evaluate(&self, point: &[f64], vectors: &[Vec<f64>]) -> Result<f64, FormError> {
        if point.len() != self.dim {
            return Err(FormError::DimMismatch {
                left: point.len(),
                right: self.dim,
            });
        }
        if vectors.len() != self.degree {
            return Err(FormError::ArityMismatch {
                expected: self.degree,
                got: vectors.len(),
            });
        }
        for v in vectors {
            if v.len() != self.dim {
                return Err(FormError::DimMismatch {
                    left: v.len(),
                    right: self.dim,
                });
            }
        }
        // Canonicalize the vector order (tracking the permutation sign) so
        // that swapping two arguments flips the result exactly, independent
        // of pivoting choices inside the determinant.
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        let mut sign = 1.0f64;
        for i in 0..order.len() {
            let mut best = i;
            for j in i + 1..order.len() {
                if lex_less(&vectors[order[j]], &vectors[order[best]]) {
                    best = j;
                }
            }
            if best != i {
                order.swap(i, best);
                sign = -sign;
            }
        }
        for w in order.windows(2) {
            if vectors[w[0]]
                .iter()
                .zip(&vectors[w[1]])
                .all(|(a, b)| a.total_cmp(b).is_eq())
            {
                return Ok(0.0);
            }
        }
        let mut flat = Vec::with_capacity(self.dim * vectors.len());
        for &i in &order {
            flat.extend_from_slice(&vectors[i]);
        }
        Ok(sign * self.compile().evaluate(point, &flat, vectors.len()))
    }

    /// Pullback along the linear map `x ↦ A·x` with exact rational entries
    /// (`matrix[i][j]` is `A_{ij}`, 0-based).
    pub fn pullback_linear(&self, matrix: &[Vec<BigRational>]) -> Result<PolyForm, FormError> {
        let m = self.dim;
        if matrix.len() != m || matrix.iter().any(|row| row.len() != m) {
            return Err(FormError::InvalidForm(format!(
                "pullback matrix must be {m}x{m}"
            )));
        }
        // x_i ↦ sum_j A_{ij} x_j as substitution polynomials
        let subs: Vec<Polynomial> = (0..m)
            .map(|i| {
                let mut p = Polynomial::zero(m);
                for j in 0..m {
                    p = p.add(&Polynomial::variable(m, j + 1).scale(&matrix[i][j]));
                }
                p
            })
            .collect();
        let mut out = Self::zero(m, self.degree);
        let k = self.degree;
        for (idx, poly) in &self.terms {
            let composed = poly.compose(&subs);
            // dx_I ∘ A = sum_J det(A[I, J]) dx_J over increasing J
            let rows: Vec<usize> = idx.indices().iter().map(|&i| i as usize - 1).collect();
            let mut cols: Vec<usize> = (0..k).collect();
            loop {
                let det = rational_minor_det(matrix, &rows, &cols);
                if !det.is_zero() {
                    let j_idx = MultiIndex::new(
                        cols.iter().map(|&c| (c + 1) as u8).collect(),
                        m,
                    )?;
                    out.add_term(j_idx, composed.scale(&det));
                }
                // next increasing combination
                if !next_combination(&mut cols, m) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Compile to an `f64` representation for fast repeated evaluation.
    pub fn compile(&self) -> CompiledForm {
        let terms = self
            .terms
            .iter()
            .map(|(idx, poly)| {
                let rows = idx.indices().iter().map(|&i| i as usize - 1).collect();
                let poly = poly
                    .terms()
                    .map(|(e, c)| (e.clone(), rational_to_f64(c)))
                    .collect();
                CompiledTerm { rows, poly }
            })
            .collect();
        CompiledForm {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (degree {} on R^{})", self.degree, self.dim);
        }
        let mut first = true;
        for (idx, poly) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?}) {:?}", poly, idx)?;
        }
        Ok(())
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

fn next_combination(cols: &mut [usize], m: usize) -> bool {
    let k = cols.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if cols[i] < m - (k - i) {
            cols[i] += 1;
            for j in i + 1..k {
                cols[j] = cols[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn rational_minor_det(
    matrix: &[Vec<BigRational>],
    rows: &[usize],
    cols: &[usize],
) -> BigRational {
    let k = rows.len();
    if k == 0 {
        return BigRational::one();
    }
    let mut sub: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| matrix[r][c].clone()).collect())
        .collect();
    // Gaussian elimination with exact arithmetic.
    let mut det = BigRational::one();
    for p in 0..k {
        let pivot_row = (p..k).find(|&r| !sub[r][p].is_zero());
        let Some(pr) = pivot_row else {
            return BigRational::zero();
        };
        if pr != p {
            sub.swap(pr, p);
            det = -det;
        }
        let pivot = sub[p][p].clone();
        det *= &pivot;
        for r in p + 1..k {
            if sub[r][p].is_zero() {
                continue;
            }
            let factor = &sub[r][p] / &pivot;
            for c in p..k {
                let sb = &sub[p][c] * &factor;
                sub[r][c] -= sb;
            }
        }
    }
    det
}

/// `ω_st = Σ dx_{2i−1} ∧ dx_{2i}` on `R^{2n}`.
pub fn omega_standard(n: usize) -> PolyForm {
    let m = 2 * n;
    let mut terms = Vec::new();
    for i in 1..=n {
        let idx = MultiIndex::new(vec![(2 * i - 1) as u8, (2 * i) as u8], m).unwrap();
        terms.push((idx, Polynomial::one(m)));
    }
    PolyForm::from_terms(m, 2, terms).unwrap()
}

/// The canonical primitive `λ = Σ x_{2i−1} dx_{2i}` with `dλ = ω_st`.
pub fn standard_primitive(n: usize) -> PolyForm {
    let m = 2 * n;
    let mut terms = Vec::new();
    for i in 1..=n {
        let idx = MultiIndex::new(vec![(2 * i) as u8], m).unwrap();
        terms.push((idx, Polynomial::variable(m, 2 * i - 1)));
    }
    PolyForm::from_terms(m, 1, terms).unwrap()
}

/// Flat `f64` form for quadrature hot loops.
#[derive(Clone)]
pub struct CompiledForm {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<CompiledTerm>,
}

#[derive(Clone)]
pub struct CompiledTerm {
    /// 0-based ambient rows selected by the multi-index.
    pub rows: Vec<usize>,
    /// (exponents, coefficient) pairs.
    pub poly: Vec<(Exponents, f64)>,
}

impl CompiledForm {
    /// Evaluate at `point` against `nvec` vectors stored contiguously in
    /// `vectors` (vector `b` occupies `vectors[b*dim .. (b+1)*dim]`).
    pub fn evaluate(&self, point: &[f64], vectors: &[f64], nvec: usize) -> f64 {
        debug_assert_eq!(nvec, self.degree);
        debug_assert_eq!(vectors.len(), nvec * self.dim);
        let k = self.degree;
        let mut acc = 0.0;
        let mut buf = [0.0f64; 64];
        for term in &self.terms {
            let mut coef = 0.0;
            for (exps, c) in &term.poly {
                let mut v = *c;
                for (i, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        v *= point[i];
                    }
                }
                coef += v;
            }
            if coef == 0.0 {
                continue;
            }
            // determinant of the k x k submatrix rows x vectors
            for (a, &r) in term.rows.iter().enumerate() {
                for b in 0..k {
                    buf[a * k + b] = vectors[b * self.dim + r];
                }
            }
            acc += coef * det_in_place(&mut buf[..k * k], k);
        }
        acc
    }
}

/// In-place LU determinant with partial pivoting for small matrices.
pub fn det_in_place(a: &mut [f64], k: usize) -> f64 {
    debug_assert_eq!(a.len(), k * k);
    if k == 0 {
        return 1.0;
    }
    if k == 1 {
        return a[0];
    }
    if k == 2 {
        return a[0] * a[3] - a[1] * a[2];
    }
    let mut det = 1.0;
    for p in 0..k {
        let mut pr = p;
        let mut best = a[p * k + p].abs();
        for r in p + 1..k {
            let v = a[r * k + p].abs();
            if v > best {
                best = v;
                pr = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pr != p {
            for c in 0..k {
                a.swap(p * k + c, pr * k + c);
            }
            det = -det;
        }
        let pivot = a[p * k + p];
        det *= pivot;
        let inv = 1.0 / pivot;
        for r in p + 1..k {
            let factor = a[r * k + p] * inv;
            if factor == 0.0 {
                continue;
            }
            for c in p + 1..k {
                a[r * k + c] -= factor * a[p * k + c];
            }
        }
    }
    det
}
