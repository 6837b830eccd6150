//! Lie algebras given by structure constants, with adjoint and coadjoint
//! operators and the classical invariants built from them.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{self, Matrix, Scalar, Subspace};

/// Raw structure constants `[e_i, e_j] = sum_k c[i][j][k] e_k`, not yet
/// known to define a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Scalar>,
}

impl StructureConstants {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            c: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.idx(i, j, k)]
    }

    /// Sets a single entry without touching its antisymmetric partner.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let at = self.idx(i, j, k);
        self.c[at] = value;
    }

    /// Sets `c[i][j][k] = value` and `c[j][i][k] = -value`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        self.set_raw(j, i, k, -value.clone());
        self.set_raw(i, j, k, value);
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = self.idx(i, j, 0);
        self.c[start..start + self.dim].to_vec()
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = exactlin::zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o += &coeff * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.get(i, j, k).clone())
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.get(i, j, k) != &-self.get(j, i, k).clone() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis triple `i < j < k` whose cyclic Jacobi sum is nonzero.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                    let mut sum = exactlin::zero_vec(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.bracket_basis(a, b);
                        let ad_c = &ads[c];
                        // [v, e_c] = -ad(e_c) v
                        let term = ad_c.mul_vec(&ab);
                        for (s, t) in sum.iter_mut().zip(term) {
                            *s -= t;
                        }
                    }
                    if !exactlin::is_zero_vec(&sum) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether a bilinear form with the given Gram matrix satisfies
    /// `B([x,y],z) + B(y,[x,z]) = 0` for these brackets.
    pub fn preserves_form(&self, gram: &Matrix) -> bool {
        (0..self.dim).all(|i| {
            let ad = self.ad_basis(i);
            (&(&ad.transpose() * gram) + &(gram * &ad)).is_zero()
        })
    }
}

/// A finite-dimensional Lie algebra over the rationals.
///
/// Construction validates antisymmetry and the Jacobi identity, so every value
/// of this type is a genuine Lie algebra.
/// `(i, j, [(k, c)])`: `[e_i, e_j] = sum of c e_k`, 0-based.
pub type BracketTerms<'a> = (usize, usize, &'a [(usize, Scalar)]);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    constants: StructureConstants,
    ad: Vec<Matrix>,
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, constants: StructureConstants) -> Result<Self> {
        if names.len() != constants.dim() {
            return Err(Error::Dimension {
                expected: constants.dim(),
                found: names.len(),
            });
        }
        if let Some((i, j, k)) = constants.antisymmetry_violation() {
            return Err(Error::NotAntisymmetric { i, j, k });
        }
        if let Some((i, j, k)) = constants.jacobi_violation() {
            return Err(Error::Jacobi { i, j, k });
        }
        let ad = (0..constants.dim()).map(|i| constants.ad_basis(i)).collect();
        Ok(Self {
            names,
            constants,
            ad,
        })
    }

    /// Builds from sparse brackets `(i, j, [(k, c)])` with default basis names `e1..en`.
    pub fn from_brackets(dim: usize, brackets: &[BracketTerms<'_>]) -> Result<Self> {
        let mut sc = StructureConstants::zeros(dim);
        for (i, j, coeffs) in brackets {
            for (k, c) in coeffs.iter() {
                if *i >= dim || *j >= dim || *k >= dim {
                    return Err(Error::Dimension {
                        expected: dim,
                        found: (*i).max(*j).max(*k) + 1,
                    });
                }
                sc.set(*i, *j, *k, c.clone());
            }
        }
        Self::new(default_names(dim), sc)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(default_names(dim), StructureConstants::zeros(dim)).expect("abelian is valid")
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn is_abelian(&self) -> bool {
        self.ad.iter().all(Matrix::is_zero)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.constants.bracket(x, y))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.constants.bracket_basis(i, j)
    }

    /// `ad(e_i)` for each basis vector.
    pub fn ad_basis(&self) -> &[Matrix] {
        &self.ad
    }

    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_len(x)?;
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (xi, ad) in x.iter().zip(&self.ad) {
            if !xi.is_zero() {
                out = &out + &ad.scale(xi);
            }
        }
        Ok(out)
    }

    /// Matrix of `ad*_x` on the dual space in the dual basis, where
    /// `(ad*_x f)(y) = -f([x, y])`; equals `-ad(x)^T`.
    pub fn coad(&self, x: &[Scalar]) -> Result<Matrix> {
        Ok(-self.ad(x)?.transpose())
    }

    pub fn coad_basis(&self) -> Vec<Matrix> {
        self.ad.iter().map(|a| -a.transpose()).collect()
    }

    /// Intersection of the kernels of all `ad(e_i)`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let rows = self.ad.iter().flat_map(Matrix::row_vectors).collect();
        Matrix::from_rows(n, rows)
            .expect("ad matrices are n x n")
            .kernel()
    }

    /// Span of all brackets `[e_i, e_j]`.
    pub fn derived_ideal(&self) -> Subspace {
        let n = self.dim();
        let mut vectors = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                vectors.push(self.bracket_basis(i, j));
            }
        }
        Subspace::span(n, vectors).expect("brackets have length n")
    }

    pub fn killing_form(&self) -> BilinearForm {
        let n = self.dim();
        BilinearForm::new(Matrix::from_fn(n, n, |i, j| (&self.ad[i] * &self.ad[j]).trace()))
    }

    /// `B([x,y],z) + B(y,[x,z]) = 0` on all basis triples.
    pub fn is_invariant(&self, form: &BilinearForm) -> bool {
        form.dim() == self.dim() && self.constants.preserves_form(form.gram())
    }

    /// Cartan's criterion: the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.killing_form().is_nondegenerate()
    }

    /// Subspace spanned by the given coordinate vectors is closed under `ad(e_i)` for all `i`.
    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        sub.basis().iter().all(|v| {
            self.ad
                .iter()
                .all(|ad| sub.contains_vector(&ad.mul_vec(v)).unwrap_or(false))
        })
    }
}

pub(crate) fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// Bilinear form on a Lie algebra, stored as its Gram matrix `B(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Self {
        assert!(gram.is_square(), "Gram matrix must be square");
        Self { gram }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(Matrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        exactlin::dot(x, &self.gram.mul_vec(y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram.is_symmetric()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Symmetric and skew parts `((B + B^T)/2, (B - B^T)/2)`.
    pub fn split(&self) -> (BilinearForm, BilinearForm) {
        let half = exactlin::ratio(1, 2);
        let t = self.gram.transpose();
        (
            BilinearForm::new((&self.gram + &t).scale(&half)),
            BilinearForm::new((&self.gram - &t).scale(&half)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, unit_vec, vec_from_i64};

    #[test]
    fn heisenberg_bracket_and_ad() {
        let h = catalog::heisenberg3();
        assert_eq!(h.bracket(&unit_vec(3, 0), &unit_vec(3, 1)).unwrap(), unit_vec(3, 2));
        let ad = h.ad(&unit_vec(3, 0)).unwrap();
        assert_eq!(ad, Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn sl2_relations() {
        let s = catalog::sl2();
        let (h, e) = (unit_vec(3, 0), unit_vec(3, 1));
        assert_eq!(s.bracket(&h, &e).unwrap(), vec_from_i64(&[0, 2, 0]));
        assert_eq!(s.ad(&h).unwrap().trace(), int(0));
        let x = vec_from_i64(&[3, -1, 2]);
        assert!(exactlin::is_zero_vec(&s.bracket(&x, &x).unwrap()));
        assert!(s.bracket(&h, &unit_vec(2, 0)).is_err());
    }

    #[test]
    fn coad_is_minus_transpose() {
        let so3 = catalog::so3();
        let x = unit_vec(3, 0);
        let coad = so3.coad(&x).unwrap();
        assert_eq!(coad, -so3.ad(&x).unwrap().transpose());
        assert_eq!(coad.rank(), 2);
        assert!(LieAlgebra::abelian(2).coad(&unit_vec(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn centers_and_derived_ideals() {
        let h = catalog::heisenberg3();
        assert_eq!(h.center(), Subspace::span(3, vec![unit_vec(3, 2)]).unwrap());
        assert_eq!(h.derived_ideal(), h.center());
        let s = catalog::sl2();
        assert_eq!((s.center().dim(), s.derived_ideal().dim()), (0, 3));
        let a = LieAlgebra::abelian(3);
        assert_eq!((a.center().dim(), a.derived_ideal().dim()), (3, 0));
    }

    #[test]
    fn killing_forms() {
        let k = catalog::sl2().killing_form();
        // basis (h, e, f)
        assert_eq!(k.gram(), &Matrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]));
        assert_eq!(catalog::so3().killing_form().gram(), &Matrix::identity(3).scale(&int(-2)));
        assert!(LieAlgebra::abelian(2).killing_form().gram().is_zero());
    }

    #[test]
    fn invariance_checks() {
        let s = catalog::sl2();
        assert!(s.is_invariant(&s.killing_form()));
        let h = catalog::heisenberg3();
        assert!(!h.is_invariant(&BilinearForm::new(Matrix::identity(3))));
        assert!(h.is_invariant(&BilinearForm::zero(3)));
    }

    #[test]
    fn semisimplicity() {
        assert!(catalog::sl2().is_semisimple());
        assert!(!catalog::heisenberg3().is_semisimple());
        assert!(!catalog::direct_sum(&catalog::so3(), &LieAlgebra::abelian(1)).is_semisimple());
    }

    #[test]
    fn jacobi_is_enforced() {
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 is antisymmetric but not Lie.
        let mut sc = StructureConstants::zeros(3);
        sc.set(0, 1, 2, int(1));
        sc.set(1, 2, 0, int(1));
        sc.set(0, 2, 0, int(1));
        assert!(matches!(
            LieAlgebra::new(default_names(3), sc),
            Err(Error::Jacobi { .. })
        ));
        let mut sc = StructureConstants::zeros(2);
        sc.set_raw(0, 1, 0, int(1));
        assert!(matches!(
            LieAlgebra::new(default_names(2), sc),
            Err(Error::NotAntisymmetric { .. })
        ));
    }
}
