//! Solution spaces of linear conditions on maps between `G` and `G*`.
//!
//! Each space is computed as the exact kernel of a stacked linear system and
//! returned as a [`NamedSpace`] of flattened (column-major) matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::cochain::{self, cocycle_rows};
use crate::error::{Error, Result};
use crate::exactlin::{ConstraintSystem, LinExpr, Matrix, Scalar, Subspace, SymMatrix};
use crate::lie::LieAlgebra;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// `der(G)`.
    Der,
    /// `ad(G)`.
    Inner,
    /// Centroid: maps commuting with every `ad(x)`.
    CentroidJ,
    /// 1-cocycles `G -> G*` for the coadjoint action.
    CocyclesQ,
    /// Maps `G* -> G` intertwining coadjoint and adjoint actions.
    Equivariant,
    /// Equivariant maps with `ad*_{ψ(f)} g = ad*_{ψ(g)} f`.
    Psi,
    /// Maps `ξ` on `G*` with `[ξ, ad*_x] = ad*_{α(x)}` for some derivation `α`.
    XiE,
    /// Transposes of elements of `XiE`.
    SSpace,
    /// Adjoint-invariant bilinear forms on `G` (Gram matrices).
    InvariantForms,
    /// Coadjoint-invariant bilinear forms on `G*` (Gram matrices).
    CoadjointInvariantForms,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::Der => "der",
            SpaceKind::Inner => "inner",
            SpaceKind::CentroidJ => "centroid",
            SpaceKind::CocyclesQ => "cocycles_q",
            SpaceKind::Equivariant => "equivariant",
            SpaceKind::Psi => "psi",
            SpaceKind::XiE => "xi_e",
            SpaceKind::SSpace => "s",
            SpaceKind::InvariantForms => "invariant_forms",
            SpaceKind::CoadjointInvariantForms => "coadjoint_invariant_forms",
        };
        f.write_str(s)
    }
}

/// A space of `rows × cols` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSpace {
    pub kind: SpaceKind,
    pub rows: usize,
    pub cols: usize,
    pub space: Subspace,
}

impl NamedSpace {
    fn new(kind: SpaceKind, rows: usize, cols: usize, space: Subspace) -> Self {
        debug_assert_eq!(space.ambient_dim(), rows * cols);
        Self {
            kind,
            rows,
            cols,
            space,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_maps(&self) -> Vec<Matrix> {
        self.space.basis_maps(self.rows, self.cols)
    }

    pub fn contains_map(&self, m: &Matrix) -> Result<bool> {
        if (m.rows(), m.cols()) != (self.rows, self.cols) {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                found: m.rows() * m.cols(),
            });
        }
        self.space.contains_map(m)
    }

    /// Errors with a contract violation unless `m` lies in the space.
    pub fn require(&self, m: &Matrix) -> Result<()> {
        if self.contains_map(m)? {
            Ok(())
        } else {
            Err(Error::Contract(format!("map is not in {}", self.kind)))
        }
    }
}

/// Derivation identity written out in structure constants:
/// `sum_m c_ij^m φ_km - sum_m φ_mi c_mj^k - sum_m φ_mj c_im^k = 0`
/// for every `i < j` and `k`, with `φ_km` stored at `m * n + k`.
pub fn derivation_system(g: &LieAlgebra) -> ConstraintSystem {
    let n = g.dim();
    let sc = g.structure();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let rows = par::map_slice(&pairs, |&(i, j)| {
        (0..n)
            .map(|k| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut add = |var: usize, c: &Scalar| {
                    if !c.is_zero() {
                        *acc.entry(var).or_insert_with(Scalar::zero) += c;
                    }
                };
                for m in 0..n {
                    add(m * n + k, sc.get(i, j, m));
                    add(i * n + m, &-sc.get(m, j, k).clone());
                    add(j * n + m, &-sc.get(i, m, k).clone());
                }
                let mut e = LinExpr::zero();
                for (var, c) in acc {
                    e.add_scaled(&c, &LinExpr::var(var));
                }
                e
            })
            .collect::<Vec<_>>()
    });
    let mut sys = ConstraintSystem::new(n * n);
    sys.extend(rows.into_iter().flatten());
    sys
}

/// Brute-force `der(G)` as a single kernel over `n²` unknowns.
pub fn derivations_of(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    NamedSpace::new(SpaceKind::Der, n, n, derivation_system(g).kernel())
}

pub fn inner_derivations(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let space = Subspace::span_of_maps(n, n, g.ad_basis()).expect("ad matrices are n x n");
    NamedSpace::new(SpaceKind::Inner, n, n, space)
}

/// `{j : j ad(e_i) = ad(e_i) j for all i}`.
pub fn centroid_j(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let j = SymMatrix::unknown(n, n, 0);
    let blocks = par::map_slice(g.ad_basis(), |ad| j.mul_const(ad).sub(&SymMatrix::const_mul(ad, &j)));
    let mut sys = ConstraintSystem::new(n * n);
    blocks.into_iter().for_each(|b| sys.push_matrix(b));
    NamedSpace::new(SpaceKind::CentroidJ, n, n, sys.kernel())
}

/// Coadjoint 1-cocycles, via the generic cochain machinery.
pub fn cocycles_q(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let z1 = cochain::d1_kernel(&cochain::coadjoint_rep(g)).z1;
    NamedSpace::new(SpaceKind::CocyclesQ, n, n, z1)
}

fn equivariance_rows(g: &LieAlgebra, psi: &SymMatrix, coad: &[Matrix]) -> Vec<SymMatrix> {
    let pairs: Vec<(&Matrix, &Matrix)> = g.ad_basis().iter().zip(coad).collect();
    par::map_slice(&pairs, |(ad, co)| psi.mul_const(co).sub(&SymMatrix::const_mul(ad, psi)))
}

/// `{ψ : G* -> G with ψ ad*_x = ad_x ψ}`.
pub fn equivariant_maps(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let psi = SymMatrix::unknown(n, n, 0);
    let coad = g.coad_basis();
    let mut sys = ConstraintSystem::new(n * n);
    equivariance_rows(g, &psi, &coad)
        .into_iter()
        .for_each(|b| sys.push_matrix(b));
    NamedSpace::new(SpaceKind::Equivariant, n, n, sys.kernel())
}

/// Equivariant maps that also satisfy `ad*_{ψ(e^a)} e^b = ad*_{ψ(e^b)} e^a` for `a < b`.
pub fn psi_space(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let psi = SymMatrix::unknown(n, n, 0);
    let coad = g.coad_basis();
    let mut sys = ConstraintSystem::new(n * n);
    equivariance_rows(g, &psi, &coad)
        .into_iter()
        .for_each(|b| sys.push_matrix(b));
    // coad(ψ e^a) as a symbolic matrix, one per dual basis vector
    let images: Vec<SymMatrix> = (0..n)
        .map(|a| SymMatrix::combination(&psi.column(a), &coad))
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = images[a].column(b);
            let rhs = images[b].column(a);
            sys.extend(lhs.into_iter().zip(rhs).map(|(mut x, y)| {
                x.sub(&y);
                x
            }));
        }
    }
    NamedSpace::new(SpaceKind::Psi, n, n, sys.kernel())
}

/// `ℰ` together with `𝒮 = {ξ^T : ξ ∈ ℰ}`.
#[derive(Debug, Clone)]
pub struct XiSpaces {
    pub e: NamedSpace,
    pub s: NamedSpace,
}

/// Solves jointly for `(ξ, α)` with `[ξ, ad*_{e_i}] = ad*_{α(e_i)}` and
/// `α ∈ der(G)`, then projects onto `ξ`.
pub fn xi_space(g: &LieAlgebra) -> XiSpaces {
    let n = g.dim();
    let nn = n * n;
    let xi = SymMatrix::unknown(n, n, 0);
    let alpha = SymMatrix::unknown(n, n, nn);
    let coad = g.coad_basis();
    let mut sys = ConstraintSystem::new(2 * nn);
    let blocks = par::map_range(n, |i| {
        let comm = xi.mul_const(&coad[i]).sub(&SymMatrix::const_mul(&coad[i], &xi));
        comm.sub(&SymMatrix::combination(&alpha.column(i), &coad))
    });
    blocks.into_iter().for_each(|b| sys.push_matrix(b));
    sys.extend(cocycle_rows(&cochain::adjoint_rep(g), nn));

    let joint = sys.kernel();
    let projected: Vec<Vec<Scalar>> = joint.basis().iter().map(|v| v[..nn].to_vec()).collect();
    let e = Subspace::span(nn, projected).expect("projection has n² entries");
    let transposes: Vec<Matrix> = e
        .basis_maps(n, n)
        .iter()
        .map(Matrix::transpose)
        .collect();
    let s = Subspace::span_of_maps(n, n, &transposes).expect("n x n maps");
    XiSpaces {
        e: NamedSpace::new(SpaceKind::XiE, n, n, e),
        s: NamedSpace::new(SpaceKind::SSpace, n, n, s),
    }
}

/// Recovers some `α ∈ der(G)` witnessing `ξ ∈ ℰ`, if one exists. `α` is only
/// determined modulo maps into the center.
pub fn xi_witness(g: &LieAlgebra, xi: &Matrix) -> Option<Matrix> {
    let n = g.dim();
    let nn = n * n;
    let coad = g.coad_basis();
    let alpha = SymMatrix::unknown(n, n, 0);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (i, co) in coad.iter().enumerate() {
        let lhs = SymMatrix::combination(&alpha.column(i), &coad);
        let target = xi.commutator(co);
        for r in 0..n {
            for c in 0..n {
                rows.push(lhs.get(r, c).to_dense(nn));
                rhs.push(target[(r, c)].clone());
            }
        }
    }
    for e in cocycle_rows(&cochain::adjoint_rep(g), 0) {
        rows.push(e.to_dense(nn));
        rhs.push(Scalar::zero());
    }
    let a = Matrix::from_rows(nn, rows).ok()?;
    let solution = a.solve(&rhs).ok()??;
    Matrix::unflatten(n, n, &solution).ok()
}

/// Adjoint-invariant bilinear forms: Gram matrices `B` with `ad_x^T B + B ad_x = 0`.
pub fn invariant_forms(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let b = SymMatrix::unknown(n, n, 0);
    let mut sys = ConstraintSystem::new(n * n);
    for ad in g.ad_basis() {
        sys.push_matrix(SymMatrix::const_mul(&ad.transpose(), &b).add(&b.mul_const(ad)));
    }
    NamedSpace::new(SpaceKind::InvariantForms, n, n, sys.kernel())
}

/// Coadjoint-invariant bilinear forms on `G*`: `C` with `(ad*_x)^T C + C ad*_x = 0`.
pub fn coadjoint_invariant_forms(g: &LieAlgebra) -> NamedSpace {
    let n = g.dim();
    let c = SymMatrix::unknown(n, n, 0);
    let mut sys = ConstraintSystem::new(n * n);
    for co in g.coad_basis() {
        sys.push_matrix(SymMatrix::const_mul(&co.transpose(), &c).add(&c.mul_const(&co)));
    }
    NamedSpace::new(SpaceKind::CoadjointInvariantForms, n, n, sys.kernel())
}

/// Lazily computed solution spaces of one algebra. Safe to share across threads.
#[derive(Debug)]
pub struct SpaceCache {
    algebra: LieAlgebra,
    der: OnceLock<NamedSpace>,
    inner: OnceLock<NamedSpace>,
    centroid: OnceLock<NamedSpace>,
    q: OnceLock<NamedSpace>,
    equivariant: OnceLock<NamedSpace>,
    psi: OnceLock<NamedSpace>,
    xi: OnceLock<XiSpaces>,
}

impl SpaceCache {
    pub fn new(algebra: LieAlgebra) -> Self {
        Self {
            algebra,
            der: OnceLock::new(),
            inner: OnceLock::new(),
            centroid: OnceLock::new(),
            q: OnceLock::new(),
            equivariant: OnceLock::new(),
            psi: OnceLock::new(),
            xi: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn der(&self) -> &NamedSpace {
        self.der.get_or_init(|| derivations_of(&self.algebra))
    }

    pub fn inner(&self) -> &NamedSpace {
        self.inner.get_or_init(|| inner_derivations(&self.algebra))
    }

    pub fn centroid(&self) -> &NamedSpace {
        self.centroid.get_or_init(|| centroid_j(&self.algebra))
    }

    pub fn q(&self) -> &NamedSpace {
        self.q.get_or_init(|| cocycles_q(&self.algebra))
    }

    pub fn equivariant(&self) -> &NamedSpace {
        self.equivariant.get_or_init(|| equivariant_maps(&self.algebra))
    }

    pub fn psi(&self) -> &NamedSpace {
        self.psi.get_or_init(|| psi_space(&self.algebra))
    }

    pub fn xi(&self) -> &XiSpaces {
        self.xi.get_or_init(|| xi_space(&self.algebra))
    }

    /// Computes every space, independent ones concurrently.
    pub fn warm(&self) {
        par::join(
            || par::join(|| self.der(), || self.centroid()),
            || par::join(|| par::join(|| self.q(), || self.psi()), || par::join(|| self.xi(), || self.equivariant())),
        );
        self.inner();
    }
}
