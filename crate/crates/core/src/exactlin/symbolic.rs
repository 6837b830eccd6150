//! Linear expressions in unknown matrix entries.
//!
//! The solution spaces computed by this crate are all kernels of linear
//! conditions on one or more unknown matrices. A [`SymMatrix`] holds a linear
//! form in each entry, so conditions can be written as ordinary matrix
//! algebra and every resulting entry becomes one row of a [`ConstraintSystem`].

use std::cmp::Ordering;

use num_traits::Zero;

use super::{Matrix, Scalar, Subspace};

/// Sparse linear form `sum_i c_i u_i`, terms sorted by variable index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinExpr {
    terms: Vec<(usize, Scalar)>,
}

impl LinExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self {
            terms: vec![(index, super::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, coeff: &Scalar, other: &LinExpr) {
        if coeff.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some((i, _)), Some((j, _))) => i.cmp(j),
            };
            match ord {
                Ordering::Less => merged.push(a.next().expect("peeked")),
                Ordering::Greater => {
                    let (j, c) = b.next().expect("peeked");
                    merged.push((*j, coeff * c));
                }
                Ordering::Equal => {
                    let (i, x) = a.next().expect("peeked");
                    let (_, y) = b.next().expect("peeked");
                    let s = x + coeff * y;
                    if !s.is_zero() {
                        merged.push((i, s));
                    }
                }
            }
        }
        self.terms = merged;
    }

    pub fn add(&mut self, other: &LinExpr) {
        self.add_scaled(&super::one(), other);
    }

    pub fn sub(&mut self, other: &LinExpr) {
        self.add_scaled(&-super::one(), other);
    }

    pub fn scaled(&self, c: &Scalar) -> LinExpr {
        if c.is_zero() {
            return LinExpr::zero();
        }
        LinExpr {
            terms: self.terms.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn to_dense(&self, unknowns: usize) -> Vec<Scalar> {
        let mut v = super::zero_vec(unknowns);
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }

    /// Evaluates the form at a concrete assignment of the unknowns.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, (i, c)| acc + c * &values[*i])
    }
}

/// `sum_k coeffs[k] * v[k]` for a constant vector `v`.
pub fn combine(coeffs: &[Scalar], exprs: &[LinExpr]) -> LinExpr {
    let mut out = LinExpr::zero();
    for (c, e) in coeffs.iter().zip(exprs) {
        out.add_scaled(c, e);
    }
    out
}

/// Matrix whose entries are linear forms in a set of unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LinExpr>,
}

impl SymMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LinExpr::zero(); rows * cols],
        }
    }

    /// A fully unknown `rows × cols` matrix whose entry `(r, c)` is variable
    /// `offset + c * rows + r`, matching the column-major flattening.
    pub fn unknown(rows: usize, cols: usize, offset: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m.entries[r * cols + c] = LinExpr::var(offset + c * rows + r);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LinExpr {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[LinExpr] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<LinExpr> {
        self.entries
    }

    pub fn column(&self, c: usize) -> Vec<LinExpr> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// `self * b`.
    pub fn mul_const(&self, b: &Matrix) -> Self {
        assert_eq!(self.cols, b.rows());
        let mut out = Self::zeros(self.rows, b.cols());
        for r in 0..self.rows {
            for k in 0..self.cols {
                let e = self.get(r, k);
                if e.is_zero() {
                    continue;
                }
                for c in 0..b.cols() {
                    let x = &b[(k, c)];
                    if !x.is_zero() {
                        out.entries[r * b.cols() + c].add_scaled(x, e);
                    }
                }
            }
        }
        out
    }

    /// `a * self`.
    pub fn const_mul(a: &Matrix, s: &SymMatrix) -> Self {
        assert_eq!(a.cols(), s.rows);
        let mut out = Self::zeros(a.rows(), s.cols);
        for r in 0..a.rows() {
            for k in 0..a.cols() {
                let x = &a[(r, k)];
                if x.is_zero() {
                    continue;
                }
                for c in 0..s.cols {
                    let e = s.get(k, c);
                    if !e.is_zero() {
                        out.entries[r * s.cols + c].add_scaled(x, e);
                    }
                }
            }
        }
        out
    }

    /// `self * v` for a constant vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<LinExpr> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = LinExpr::zero();
                for (c, x) in v.iter().enumerate() {
                    acc.add_scaled(x, self.get(r, c));
                }
                acc
            })
            .collect()
    }

    /// `sum_k coeffs[k] * mats[k]`: a constant-matrix-valued linear function
    /// evaluated at a symbolic vector.
    pub fn combination(coeffs: &[LinExpr], mats: &[Matrix]) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let (rows, cols) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut out = Self::zeros(rows, cols);
        for (coeff, m) in coeffs.iter().zip(mats) {
            if coeff.is_zero() {
                continue;
            }
            for r in 0..rows {
                for c in 0..cols {
                    let x = &m[(r, c)];
                    if !x.is_zero() {
                        out.entries[r * cols + c].add_scaled(x, coeff);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SymMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &SymMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            a.sub(b);
        }
        out
    }
}

/// `a * v` for a constant matrix and a symbolic vector.
pub fn const_mul_vec(a: &Matrix, v: &[LinExpr]) -> Vec<LinExpr> {
    assert_eq!(a.cols(), v.len());
    (0..a.rows())
        .map(|r| {
            let mut acc = LinExpr::zero();
            for (c, e) in v.iter().enumerate() {
                acc.add_scaled(&a[(r, c)], e);
            }
            acc
        })
        .collect()
}

/// Homogeneous linear conditions `expr = 0` on a fixed number of unknowns.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    unknowns: usize,
    rows: Vec<LinExpr>,
}

impl ConstraintSystem {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, expr: LinExpr) {
        debug_assert!(expr.terms.iter().all(|(i, _)| *i < self.unknowns));
        if !expr.is_zero() {
            self.rows.push(expr);
        }
    }

    pub fn extend<I: IntoIterator<Item = LinExpr>>(&mut self, exprs: I) {
        for e in exprs {
            self.push(e);
        }
    }

    /// Requires every entry of `m` to vanish.
    pub fn push_matrix(&mut self, m: SymMatrix) {
        self.extend(m.into_entries());
    }

    pub fn to_matrix(&self) -> Matrix {
        let dense = self.rows.iter().map(|e| e.to_dense(self.unknowns)).collect();
        Matrix::from_rows(self.unknowns, dense).expect("rows have unknowns entries")
    }

    /// Solution space of the system.
    pub fn kernel(&self) -> Subspace {
        let dense: Vec<Vec<Scalar>> = crate::par::map_slice(&self.rows, |e| e.to_dense(self.unknowns));
        let ech = super::rref(&dense, self.unknowns);
        Subspace::from_vectors_unchecked(self.unknowns, ech.null_space())
    }

    /// Whether a concrete assignment satisfies every condition.
    pub fn is_satisfied_by(&self, values: &[Scalar]) -> bool {
        self.rows.iter().all(|e| e.eval(values).is_zero())
    }
}
