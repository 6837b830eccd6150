//! Degree 0 and 1 Chevalley–Eilenberg cochains with values in a module.
//!
//! A 1-cochain `φ ∈ Hom(G, V)` is an `m × n` matrix whose column `i` is
//! `φ(e_i)`; it is flattened column-major, so `φ(e_i)_a` sits at index
//! `i * m + a`.

use crate::error::{Error, Result};
use crate::exactlin::{self, const_mul_vec, ConstraintSystem, LinExpr, Matrix, Scalar, Subspace, SymMatrix};
use crate::lie::LieAlgebra;
use crate::par;

/// A Lie algebra homomorphism `G -> gl(V)`, given on the basis of `G`.
#[derive(Debug, Clone)]
pub struct Representation {
    algebra: LieAlgebra,
    module_dim: usize,
    rho: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: LieAlgebra, rho: Vec<Matrix>) -> Result<Self> {
        let n = algebra.dim();
        if rho.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: rho.len(),
            });
        }
        let m = rho.first().map_or(0, Matrix::rows);
        if let Some(bad) = rho.iter().find(|r| r.rows() != m || r.cols() != m) {
            return Err(Error::Dimension {
                expected: m,
                found: bad.rows().max(bad.cols()),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let bracket = algebra.bracket_basis(i, j);
                let mut image = Matrix::zeros(m, m);
                for (c, r) in bracket.iter().zip(&rho) {
                    image = &image + &r.scale(c);
                }
                if image != rho[i].commutator(&rho[j]) {
                    return Err(Error::NotHomomorphism { i, j });
                }
            }
        }
        Ok(Self {
            algebra,
            module_dim: m,
            rho,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    /// `ρ(x)` for a coordinate vector `x`.
    pub fn action(&self, x: &[Scalar]) -> Matrix {
        let m = self.module_dim;
        x.iter()
            .zip(&self.rho)
            .fold(Matrix::zeros(m, m), |acc, (c, r)| &acc + &r.scale(c))
    }

    /// `δφ(e_i, e_j) = ρ(e_i)φ(e_j) - ρ(e_j)φ(e_i) - φ([e_i, e_j])` for every `i < j`.
    pub fn coboundary_of(&self, phi: &Matrix) -> Vec<Vec<Scalar>> {
        let n = self.algebra.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let a = self.rho[i].mul_vec(&phi.column(j));
                let b = self.rho[j].mul_vec(&phi.column(i));
                let c = phi.mul_vec(&self.algebra.bracket_basis(i, j));
                out.push(
                    a.iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((x, y), z)| x - y - z)
                        .collect(),
                );
            }
        }
        out
    }

    pub fn is_cocycle(&self, phi: &Matrix) -> bool {
        self.coboundary_of(phi).iter().all(|v| exactlin::is_zero_vec(v))
    }

    /// The 1-coboundary `x ↦ ρ(x) v`.
    pub fn coboundary_of_vector(&self, v: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.rho.iter().map(|r| r.mul_vec(v)).collect();
        Matrix::from_columns(self.module_dim, &cols).expect("module_dim rows")
    }
}

pub fn adjoint_rep(g: &LieAlgebra) -> Representation {
    Representation::new(g.clone(), g.ad_basis().to_vec()).expect("adjoint action is a representation")
}

pub fn coadjoint_rep(g: &LieAlgebra) -> Representation {
    Representation::new(g.clone(), g.coad_basis()).expect("coadjoint action is a representation")
}

/// Cocycles, coboundaries and first cohomology of a representation.
#[derive(Debug, Clone)]
pub struct CocycleSpace {
    pub z1: Subspace,
    pub b1: Subspace,
    pub h1_dim: usize,
}

impl CocycleSpace {
    /// Cocycles completing a basis of `b1` to a basis of `z1`; their classes
    /// form a basis of `H^1`.
    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        self.z1
            .complement_basis(&self.b1)
            .expect("coboundaries are cocycles")
    }
}

/// Linear conditions on `φ ∈ Hom(G, V)` (variables `offset..offset + n*m`)
/// expressing the cocycle identity, one block of rows per pair `i < j`.
pub(crate) fn cocycle_rows(rep: &Representation, offset: usize) -> Vec<LinExpr> {
    let n = rep.algebra.dim();
    let m = rep.module_dim;
    let phi = SymMatrix::unknown(m, n, offset);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    par::map_slice(&pairs, |&(i, j)| {
        let a = const_mul_vec(&rep.rho[i], &phi.column(j));
        let b = const_mul_vec(&rep.rho[j], &phi.column(i));
        let c = phi.mul_vec(&rep.algebra.bracket_basis(i, j));
        a.into_iter()
            .zip(b)
            .zip(c)
            .map(|((mut x, y), z)| {
                x.sub(&y);
                x.sub(&z);
                x
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn d1_kernel(rep: &Representation) -> CocycleSpace {
    let n = rep.algebra.dim();
    let m = rep.module_dim;
    let mut sys = ConstraintSystem::new(n * m);
    sys.extend(cocycle_rows(rep, 0));
    let z1 = sys.kernel();
    let b1 = Subspace::span(
        n * m,
        (0..m)
            .map(|a| rep.coboundary_of_vector(&exactlin::unit_vec(m, a)).flatten())
            .collect(),
    )
    .expect("coboundaries have n*m entries");
    debug_assert!(z1.contains(&b1).unwrap());
    let h1_dim = z1.dim() - b1.dim();
    CocycleSpace { z1, b1, h1_dim }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::int;

    #[test]
    fn abelian_reps_are_zero() {
        let a = LieAlgebra::abelian(2);
        assert!(adjoint_rep(&a).rho().iter().all(Matrix::is_zero));
        assert!(coadjoint_rep(&a).rho().iter().all(Matrix::is_zero));
    }

    #[test]
    fn sl2_adjoint_h_is_diagonal() {
        let rep = adjoint_rep(&catalog::sl2());
        let h = &rep.rho()[0];
        assert_eq!(h, &Matrix::from_i64(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
    }

    #[test]
    fn coadjoint_is_minus_transpose_of_adjoint() {
        let g = catalog::heisenberg3();
        for (a, c) in adjoint_rep(&g).rho().iter().zip(coadjoint_rep(&g).rho()) {
            assert_eq!(c, &-a.transpose());
        }
    }

    #[test]
    fn whitehead_for_sl2_coadjoint() {
        let cs = d1_kernel(&coadjoint_rep(&catalog::sl2()));
        assert_eq!((cs.z1.dim(), cs.b1.dim(), cs.h1_dim), (3, 3, 0));
        assert!(cs.representatives().is_empty());
    }

    #[test]
    fn abelian_adjoint_cohomology_is_everything() {
        let cs = d1_kernel(&adjoint_rep(&LieAlgebra::abelian(3)));
        assert_eq!((cs.z1.dim(), cs.b1.dim(), cs.h1_dim), (9, 0, 9));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        // ρ(e1) = 1, ρ(e2) = 0 on aff(1): ρ([e1,e2]) = ρ(e2) = 0 = [1, 0], fine;
        // ρ(e1) = 0, ρ(e2) = 1 fails since ρ(e2) != [ρ(e1), ρ(e2)] = 0.
        let g = catalog::aff1();
        assert!(Representation::new(g.clone(), vec![Matrix::from_i64(&[&[1]]), Matrix::zeros(1, 1)]).is_ok());
        assert!(matches!(
            Representation::new(g, vec![Matrix::zeros(1, 1), Matrix::from_i64(&[&[1]])]),
            Err(Error::NotHomomorphism { i: 0, j: 1 })
        ));
    }

    #[test]
    fn representatives_are_cocycles_outside_b1() {
        let rep = adjoint_rep(&catalog::heisenberg3());
        let cs = d1_kernel(&rep);
        let reps = cs.representatives();
        assert_eq!(reps.len(), cs.h1_dim);
        for v in reps {
            let phi = Matrix::unflatten(3, 3, &v).unwrap();
            assert!(rep.is_cocycle(&phi));
            assert!(!cs.b1.contains_vector(&v).unwrap());
        }
        assert_eq!(rep.action(&[int(0), int(0), int(1)]), Matrix::zeros(3, 3));
    }
}
