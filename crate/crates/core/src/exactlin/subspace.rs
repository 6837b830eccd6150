use num_traits::Zero;

use super::{rref, Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `Q^ambient`, stored by its canonical basis.
///
/// The basis vectors are the rows of the reduced row echelon form of any
/// spanning set (equivalently, the columns of the reduced column echelon form
/// of the basis matrix). Two subspaces are equal iff their canonical bases
/// are identical, so the derived `PartialEq` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Result of comparing two subspaces of the same ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceOps {
    pub equal: bool,
    pub sum: Subspace,
    pub intersection: Subspace,
    /// `b ⊆ a`.
    pub contains: bool,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors_unchecked(
            ambient,
            (0..ambient).map(|i| super::unit_vec(ambient, i)).collect(),
        )
    }

    /// Span of the given vectors, which must all have length `ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Dimension {
                expected: ambient,
                found: v.len(),
            });
        }
        Ok(Self::from_vectors_unchecked(ambient, vectors))
    }

    pub(crate) fn from_vectors_unchecked(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let ech = rref(&vectors, ambient);
        Self {
            ambient,
            basis: ech.rows,
            pivots: ech.pivots,
        }
    }

    /// Span of flattened matrices (column-major, see [`Matrix::flatten`]).
    pub fn span_of_maps(rows: usize, cols: usize, maps: &[Matrix]) -> Result<Self> {
        Self::span(rows * cols, maps.iter().map(Matrix::flatten).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis).expect("basis has ambient length")
    }

    /// Canonical basis vectors unflattened into `rows × cols` matrices.
    pub fn basis_maps(&self, rows: usize, cols: usize) -> Vec<Matrix> {
        assert_eq!(rows * cols, self.ambient, "map shape does not match ambient dimension");
        self.basis
            .iter()
            .map(|v| Matrix::unflatten(rows, cols, v).expect("length checked"))
            .collect()
    }

    fn check_ambient(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: len,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the canonical basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_ambient(v.len())?;
        let mut rest = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !rest[p].is_zero() {
                let c = -rest[p].clone();
                super::axpy(&mut rest, &c, row);
            }
        }
        Ok(rest)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        Ok(super::is_zero_vec(&self.reduce(v)?))
    }

    pub fn contains_map(&self, m: &Matrix) -> Result<bool> {
        self.contains_vector(&m.flatten())
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        self.check_ambient(v.len())?;
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = super::zero_vec(self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            super::axpy(&mut rebuilt, c, row);
        }
        Ok((rebuilt == v).then_some(coords))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        for v in &other.basis {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_vectors_unchecked(self.ambient, vectors))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // Solve sum_i s_i a_i - sum_j t_j b_j = 0 and map (s, t) to sum_i s_i a_i.
        let k = self.dim();
        let stacked = Matrix::from_fn(self.ambient, k + other.dim(), |r, c| {
            if c < k {
                self.basis[c][r].clone()
            } else {
                -other.basis[c - k][r].clone()
            }
        });
        let vectors = stacked
            .kernel()
            .basis()
            .iter()
            .map(|st| {
                let mut v = super::zero_vec(self.ambient);
                for (s, a) in st[..k].iter().zip(&self.basis) {
                    super::axpy(&mut v, s, a);
                }
                v
            })
            .collect();
        Ok(Self::from_vectors_unchecked(self.ambient, vectors))
    }

    pub fn ops(&self, other: &Subspace) -> Result<SubspaceOps> {
        Ok(SubspaceOps {
            equal: self == other,
            sum: self.sum(other)?,
            intersection: self.intersection(other)?,
            contains: self.contains(other)?,
        })
    }

    /// Image of the subspace under a linear map given by a matrix.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        self.check_ambient(map.cols())?;
        let vectors = self.basis.iter().map(|v| map.mul_vec(v)).collect();
        Ok(Self::from_vectors_unchecked(map.rows(), vectors))
    }

    /// Canonical basis vectors of `self` that complete a basis of `sub` to one
    /// of `self`, chosen greedily in canonical order.
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        if !self.contains(sub)? {
            return Err(Error::Contract(
                "complement requested for a non-contained subspace".into(),
            ));
        }
        let mut acc = sub.clone();
        let mut chosen = Vec::new();
        for v in &self.basis {
            if !acc.contains_vector(v)? {
                acc = acc.sum(&Self::from_vectors_unchecked(self.ambient, vec![v.clone()]))?;
                chosen.push(v.clone());
            }
        }
        Ok(chosen)
    }
}
