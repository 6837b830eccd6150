//! The cotangent algebra `D = G ⋉ G*`, its duality pairing, and the double
//! built from a skew r-matrix.
//!
//! Basis order of `D` is fixed throughout the crate: `e_1..e_n` of `G` first,
//! then the dual basis `e^1..e^n` of `G*`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{self, Matrix, Scalar};
use crate::lie::{BilinearForm, LieAlgebra, StructureConstants};

/// Sign used for the action of `G` on `G*` when assembling `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoadjointConvention {
    /// `(ad*_x f)(y) = -f([x, y])`, i.e. `-ad(x)^T`. The only choice that yields a Lie algebra.
    Standard,
    /// `+ad(x)^T`. Not a representation in general; exists so tests can show
    /// that the wrong sign is detected.
    Flipped,
}

#[derive(Debug, Clone)]
pub struct CotangentAlgebra {
    base: LieAlgebra,
    total: LieAlgebra,
}

impl CotangentAlgebra {
    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn total(&self) -> &LieAlgebra {
        &self.total
    }

    /// Dimension `n` of the base algebra.
    pub fn n(&self) -> usize {
        self.base.dim()
    }

    /// Embeds `(x, f)` as a coordinate vector of `D`.
    pub fn pair(&self, x: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        assert_eq!((x.len(), f.len()), (self.n(), self.n()));
        x.iter().chain(f).cloned().collect()
    }

    /// Splits a coordinate vector of `D` into its `G` and `G*` parts.
    pub fn split<'a>(&self, v: &'a [Scalar]) -> (&'a [Scalar], &'a [Scalar]) {
        v.split_at(self.n())
    }
}

/// Structure constants of `G ⋉ G*` for the chosen action sign, unvalidated.
pub fn semidirect_structure(g: &LieAlgebra, convention: CoadjointConvention) -> StructureConstants {
    let n = g.dim();
    let mut sc = StructureConstants::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                sc.set_raw(i, j, k, g.structure().get(i, j, k).clone());
            }
        }
    }
    for (i, ad) in g.ad_basis().iter().enumerate() {
        let action = match convention {
            CoadjointConvention::Standard => -ad.transpose(),
            CoadjointConvention::Flipped => ad.transpose(),
        };
        // [e_i, e^a] = action * e^a, i.e. column a of the action matrix.
        for a in 0..n {
            for b in 0..n {
                let c = &action[(b, a)];
                if !c.is_zero() {
                    sc.set(i, n + a, n + b, c.clone());
                }
            }
        }
    }
    sc
}

fn dual_names(g: &LieAlgebra) -> Vec<String> {
    g.basis_names()
        .iter()
        .cloned()
        .chain(g.basis_names().iter().map(|s| format!("{s}*")))
        .collect()
}

/// `D = G ⋉ G*` with bracket `[(x,f),(y,g)] = ([x,y], ad*_x g - ad*_y f)`.
pub fn build_cotangent(g: &LieAlgebra) -> CotangentAlgebra {
    let sc = semidirect_structure(g, CoadjointConvention::Standard);
    let total = LieAlgebra::new(dual_names(g), sc)
        .expect("semidirect product with the coadjoint action satisfies Jacobi");
    CotangentAlgebra {
        base: g.clone(),
        total,
    }
}

/// Gram matrix of `μ0((x,f),(y,g)) = f(y) + g(x)` on a `2n`-dimensional space.
pub fn duality_gram(n: usize) -> Matrix {
    let mut gram = Matrix::zeros(2 * n, 2 * n);
    Matrix::identity(n).write_block(&mut gram, 0, n);
    Matrix::identity(n).write_block(&mut gram, n, 0);
    gram
}

pub fn duality_pairing(d: &CotangentAlgebra) -> BilinearForm {
    BilinearForm::new(duality_gram(d.n()))
}

/// A skew element `r ∈ Λ²G`, stored as the matrix of `r~: G* -> G`, `r~(f) = r(f, ·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    r: Matrix,
}

impl RMatrix {
    pub fn new(r: Matrix) -> Result<Self> {
        if !r.is_antisymmetric() {
            return Err(Error::Contract("r-matrix must be antisymmetric".into()));
        }
        Ok(Self { r })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            r: Matrix::zeros(n, n),
        }
    }

    /// `e_i ∧ e_j` (zero-based indices): `r~(e^i) = e_j`, `r~(e^j) = -e_i`.
    pub fn wedge(n: usize, i: usize, j: usize) -> Self {
        let mut r = Matrix::zeros(n, n);
        if i != j {
            r[(j, i)] = exactlin::one();
            r[(i, j)] = -exactlin::one();
        }
        Self { r }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.r
    }

    pub fn apply(&self, f: &[Scalar]) -> Vec<Scalar> {
        self.r.mul_vec(f)
    }
}

#[derive(Debug, Clone)]
pub struct RDouble {
    /// Structure constants of `[,]_π` on `G ⊕ G*`.
    pub structure: StructureConstants,
    /// Whether `[,]_π` satisfies the Jacobi identity. This holds whenever
    /// `[[r, r]]` is ad-invariant, which is weaker than the CYBE.
    pub jacobi_holds: bool,
    /// The validated double, present exactly when `jacobi_holds`.
    pub double: Option<LieAlgebra>,
    /// Block matrix `[[I, r], [0, I]]` of `θ_r(x, f) = (x + r~(f), f)`.
    pub theta_r: Matrix,
    /// `r~` is a homomorphism `(G*, [,]_*) -> G`, i.e. `[r~f, r~g] = r~[f,g]_*`,
    /// which is the classical Yang-Baxter equation for skew `r`.
    pub is_cybe: bool,
    /// Whether `θ_r [u,v]_π = [θ_r u, θ_r v]_D` on all basis pairs.
    pub theta_is_homomorphism: bool,
}

/// `[f, g]_* = ad*_{r~(f)} g - ad*_{r~(g)} f`.
fn dual_bracket(g: &LieAlgebra, r: &RMatrix, f: &[Scalar], h: &[Scalar]) -> Vec<Scalar> {
    let a = g.coad(&r.apply(f)).expect("length n").mul_vec(h);
    let b = g.coad(&r.apply(h)).expect("length n").mul_vec(f);
    a.iter().zip(&b).map(|(x, y)| x - y).collect()
}

/// Coadjoint action of `(G*, [,]_*)` on `G = G**`: `h(ad*_f y) = -([f, h]_*)(y)`.
fn dual_coad(g: &LieAlgebra, r: &RMatrix, f: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = g.dim();
    (0..n)
        .map(|b| -exactlin::dot(&dual_bracket(g, r, f, &exactlin::unit_vec(n, b)), y))
        .collect()
}

fn bracket_pi(g: &LieAlgebra, r: &RMatrix, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let n = g.dim();
    let (x, f) = u.split_at(n);
    let (y, h) = v.split_at(n);
    let mut top = g.structure().bracket(x, y);
    let t1 = dual_coad(g, r, f, y);
    let t2 = dual_coad(g, r, h, x);
    for ((t, a), b) in top.iter_mut().zip(&t1).zip(&t2) {
        *t += a - b;
    }
    let mut bottom = g.coad(x).expect("length n").mul_vec(h);
    let b2 = g.coad(y).expect("length n").mul_vec(f);
    let b3 = dual_bracket(g, r, f, h);
    for ((t, a), b) in bottom.iter_mut().zip(&b2).zip(&b3) {
        *t += b - a;
    }
    top.into_iter().chain(bottom).collect()
}

/// Builds the double bracket `[,]_π` for a skew `r` and tests it against `D`.
pub fn double_from_r(g: &LieAlgebra, r: &RMatrix) -> Result<RDouble> {
    let n = g.dim();
    if r.matrix().rows() != n {
        return Err(Error::Dimension {
            expected: n,
            found: r.matrix().rows(),
        });
    }
    let basis: Vec<Vec<Scalar>> = (0..2 * n).map(|i| exactlin::unit_vec(2 * n, i)).collect();
    let mut structure = StructureConstants::zeros(2 * n);
    for i in 0..2 * n {
        for j in i + 1..2 * n {
            let b = bracket_pi(g, r, &basis[i], &basis[j]);
            for (k, c) in b.into_iter().enumerate() {
                if !c.is_zero() {
                    structure.set(i, j, k, c);
                }
            }
        }
    }
    let jacobi_holds = structure.jacobi_violation().is_none();
    let double = if jacobi_holds {
        Some(LieAlgebra::new(dual_names(g), structure.clone())?)
    } else {
        None
    };

    let mut theta_r = Matrix::identity(2 * n);
    r.matrix().write_block(&mut theta_r, 0, n);

    let d = build_cotangent(g);
    let theta_is_homomorphism = (0..2 * n).all(|i| {
        (i + 1..2 * n).all(|j| {
            let lhs = theta_r.mul_vec(&structure.bracket_basis(i, j));
            let rhs = d
                .total()
                .structure()
                .bracket(&theta_r.column(i), &theta_r.column(j));
            lhs == rhs
        })
    });

    let is_cybe = (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let (f, h) = (exactlin::unit_vec(n, a), exactlin::unit_vec(n, b));
            g.structure().bracket(&r.apply(&f), &r.apply(&h)) == r.apply(&dual_bracket(g, r, &f, &h))
        })
    });

    Ok(RDouble {
        structure,
        jacobi_holds,
        double,
        theta_r,
        is_cybe,
        theta_is_homomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, unit_vec};

    #[test]
    fn abelian_cotangent_is_abelian() {
        let d = build_cotangent(&LieAlgebra::abelian(1));
        assert!(d.total().is_abelian());
        assert_eq!(d.total().dim(), 2);
    }

    #[test]
    fn heisenberg_mixed_bracket() {
        let g = catalog::heisenberg3();
        let d = build_cotangent(&g);
        assert_eq!(d.total().dim(), 6);
        // [(e1,0),(0,e^2)] = (0, ad*_{e1} e^2); (ad*_{e1} e^2)(y) = -e^2([e1,y]) = 0 since
        // [e1,y] only has an e3 component. Use e^3 instead: -e^3([e1,e2]) = -1.
        let b = d.total().bracket(&unit_vec(6, 0), &unit_vec(6, 4)).unwrap();
        assert!(exactlin::is_zero_vec(&b));
        let b = d.total().bracket(&unit_vec(6, 0), &unit_vec(6, 5)).unwrap();
        let coad = g.coad(&unit_vec(3, 0)).unwrap().mul_vec(&unit_vec(3, 2));
        assert_eq!(b, d.pair(&exactlin::zero_vec(3), &coad));
        assert_eq!(coad, vec![int(0), int(-1), int(0)]);
    }

    #[test]
    fn dual_block_is_abelian_and_base_is_subalgebra() {
        for entry in catalog::catalog() {
            let d = build_cotangent(&entry.algebra);
            let n = d.n();
            for a in n..2 * n {
                for b in n..2 * n {
                    assert!(exactlin::is_zero_vec(&d.total().bracket_basis(a, b)));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let b = d.total().bracket_basis(i, j);
                    assert_eq!(&b[..n], entry.algebra.bracket_basis(i, j).as_slice());
                    assert!(exactlin::is_zero_vec(&b[n..]));
                }
            }
        }
    }

    #[test]
    fn pairing_values() {
        let d = build_cotangent(&catalog::sl2());
        let mu = duality_pairing(&d);
        assert_eq!(mu.eval(&unit_vec(6, 0), &unit_vec(6, 3)), int(1));
        assert_eq!(mu.eval(&unit_vec(6, 0), &unit_vec(6, 1)), int(0));
        assert!(d.total().is_invariant(&mu));
        assert!(mu.is_symmetric() && mu.is_nondegenerate());
    }

    #[test]
    fn flipped_sign_breaks_invariance() {
        let g = catalog::sl2();
        let sc = semidirect_structure(&g, CoadjointConvention::Flipped);
        assert!(!sc.preserves_form(&duality_gram(3)));
        assert!(sc.jacobi_violation().is_some());
    }

    #[test]
    fn zero_r_reproduces_cotangent() {
        let g = catalog::heisenberg3();
        let out = double_from_r(&g, &RMatrix::zero(3)).unwrap();
        assert!(out.is_cybe && out.theta_is_homomorphism && out.jacobi_holds);
        assert_eq!(out.theta_r, Matrix::identity(6));
        assert_eq!(&out.structure, build_cotangent(&g).total().structure());
    }

    #[test]
    fn aff1_wedge_is_a_cybe_solution() {
        let out = double_from_r(&catalog::aff1(), &RMatrix::wedge(2, 0, 1)).unwrap();
        assert!(out.is_cybe && out.jacobi_holds);
        assert!(out.theta_is_homomorphism);
        assert_eq!(out.theta_r.rank(), 4);
        assert_eq!(out.double.unwrap().structure(), &out.structure);
    }

    #[test]
    fn so3_wedge_is_not() {
        let out = double_from_r(&catalog::so3(), &RMatrix::wedge(3, 0, 1)).unwrap();
        assert!(!out.is_cybe);
        assert!(!out.theta_is_homomorphism);
        // [[r, r]] = e1∧e2∧e3 is ad-invariant on so3, so the bracket is still Lie.
        assert!(out.jacobi_holds);
    }

    #[test]
    fn r_must_be_skew() {
        assert!(RMatrix::new(Matrix::identity(2)).is_err());
    }
}
