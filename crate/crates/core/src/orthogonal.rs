//! Transport along `θ: G -> G*`, `θ(x) = μ(x, ·)`, for an orthogonal Lie algebra `(G, μ)`.

use crate::cochain::{adjoint_rep, coadjoint_rep};
use crate::cotangent::{duality_pairing, CotangentAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{unit_vec, Matrix, Scalar, Subspace};
use num_traits::Zero;
use crate::lie::{BilinearForm, LieAlgebra};
use crate::par;
use crate::spaces::{self, xi_witness, NamedSpace};
use crate::structure::{BlockMap, Check, CotangentAnalysis};

#[derive(Debug, Clone)]
pub struct OrthogonalStructure {
    algebra: LieAlgebra,
    mu: BilinearForm,
    theta: Matrix,
    theta_inv: Matrix,
}

impl OrthogonalStructure {
    /// Validates `mu` (symmetric, nondegenerate, invariant) and builds `θ`.
    pub fn new(algebra: LieAlgebra, mu: BilinearForm) -> Result<Self> {
        if mu.dim() != algebra.dim() {
            return Err(Error::Dimension {
                expected: algebra.dim(),
                found: mu.dim(),
            });
        }
        if !mu.is_symmetric() {
            return Err(Error::InvalidForm("form is not symmetric".into()));
        }
        if !algebra.is_invariant(&mu) {
            return Err(Error::InvalidForm("form is not invariant".into()));
        }
        let theta = mu.gram().clone();
        let theta_inv = theta
            .inverse()
            .ok_or_else(|| Error::InvalidForm("form is degenerate".into()))?;
        let o = Self {
            algebra,
            mu,
            theta,
            theta_inv,
        };
        if !o.equivariance_holds() {
            return Err(Error::TheoremViolation("θ does not intertwine ad and ad*".into()));
        }
        Ok(o)
    }

    /// `D = G ⋉ G*` with the duality pairing `μ0`.
    pub fn of_cotangent(d: &CotangentAlgebra) -> Result<Self> {
        Self::new(d.total().clone(), duality_pairing(d))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn mu(&self) -> &BilinearForm {
        &self.mu
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    pub fn theta_inv(&self) -> &Matrix {
        &self.theta_inv
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `θ ad_x = ad*_x θ` and `θ⁻¹ ad*_x = ad_x θ⁻¹` on every basis vector.
    pub fn equivariance_holds(&self) -> bool {
        let coad = self.algebra.coad_basis();
        self.algebra.ad_basis().iter().zip(&coad).all(|(ad, co)| {
            &self.theta * ad == co * &self.theta && &self.theta_inv * co == ad * &self.theta_inv
        })
    }

    /// `β ↦ θ⁻¹ β`, from coadjoint cocycles to derivations.
    pub fn transport_cocycle(&self, beta: &Matrix) -> Result<Matrix> {
        self.check_shape(beta)?;
        if !coadjoint_rep(&self.algebra).is_cocycle(beta) {
            return Err(Error::Contract("map is not a coadjoint cocycle".into()));
        }
        Ok(&self.theta_inv * beta)
    }

    /// `D ↦ θ D`, from derivations to coadjoint cocycles.
    pub fn transport_derivation(&self, der: &Matrix) -> Result<Matrix> {
        self.check_shape(der)?;
        if !adjoint_rep(&self.algebra).is_cocycle(der) {
            return Err(Error::Contract("map is not a derivation".into()));
        }
        Ok(&self.theta * der)
    }

    /// `ξ ↦ θ⁻¹ ξ θ`, from `ℰ` to `𝒮`.
    pub fn transport_xi(&self, xi: &Matrix) -> Result<Matrix> {
        self.check_shape(xi)?;
        if xi_witness(&self.algebra, xi).is_none() {
            return Err(Error::Contract("map is not in E".into()));
        }
        Ok(&(&self.theta_inv * xi) * &self.theta)
    }

    /// `s ↦ θ s θ⁻¹`, from `𝒮` back to `ℰ`.
    pub fn transport_s(&self, s: &Matrix) -> Result<Matrix> {
        self.check_shape(s)?;
        if xi_witness(&self.algebra, &s.transpose()).is_none() {
            return Err(Error::Contract("map is not in S".into()));
        }
        Ok(&(&self.theta * s) * &self.theta_inv)
    }

    fn check_shape(&self, m: &Matrix) -> Result<()> {
        let n = self.dim();
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: m.rows(),
            });
        }
        Ok(())
    }

    /// `ω_ψ` Gram matrix: `ω_ψ(x, y) = μ(ψ θ x, y)`.
    pub fn omega_gram(&self, psi: &Matrix) -> Matrix {
        (&(psi * &self.theta).transpose()) * self.mu.gram()
    }

    /// Basis of the equivariant maps `ψ` whose `ω_ψ` is skew.
    pub fn skew_equivariant_maps(&self) -> Vec<Matrix> {
        let basis = spaces::equivariant_maps(&self.algebra).basis_maps();
        if basis.is_empty() {
            return basis;
        }
        let n = self.dim();
        let sym_parts: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|psi| {
                let w = self.omega_gram(psi);
                (&w + &w.transpose()).flatten()
            })
            .collect();
        let coeffs = Matrix::from_columns(n * n, &sym_parts)
            .expect("n² entries")
            .kernel();
        coeffs
            .basis()
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&basis)
                    .fold(Matrix::zeros(n, n), |acc, (ci, m)| &acc + &m.scale(ci))
            })
            .collect()
    }
}

/// The four mutually isomorphic spaces `𝒥`, equivariant maps, invariant
/// forms on `G` and coadjoint-invariant forms on `G*`, with the maps between them.
#[derive(Debug, Clone)]
pub struct SquareReport {
    pub dim_j: usize,
    pub dim_equivariant: usize,
    pub dim_forms: usize,
    pub dim_coforms: usize,
    pub checks: Vec<Check>,
}

impl SquareReport {
    pub fn dims_equal(&self) -> bool {
        self.dim_j == self.dim_equivariant
            && self.dim_j == self.dim_forms
            && self.dim_j == self.dim_coforms
    }

    pub fn passed(&self) -> bool {
        self.dims_equal() && self.checks.iter().all(|c| c.passed)
    }
}

fn image_check(name: &str, source: &NamedSpace, target: &NamedSpace, f: impl Fn(&Matrix) -> Matrix + Sync) -> Check {
    let basis = source.basis_maps();
    let images = par::map_slice(&basis, &f);
    let mut failures: Vec<String> = images
        .iter()
        .enumerate()
        .filter(|(_, m)| !target.contains_map(m).unwrap_or(false))
        .map(|(i, _)| format!("basis element {i} leaves the target"))
        .collect();
    let rank = Subspace::span_of_maps(target.rows, target.cols, &images)
        .map(|s| s.dim())
        .unwrap_or(0);
    if rank != basis.len() {
        failures.push(format!("rank {rank} below source dimension {}", basis.len()));
    }
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}

pub fn j_psi_bilinear_square(o: &OrthogonalStructure) -> SquareReport {
    let g = o.algebra();
    let (j, eq) = par::join(|| spaces::centroid_j(g), || spaces::equivariant_maps(g));
    let (forms, coforms) = par::join(|| spaces::invariant_forms(g), || spaces::coadjoint_invariant_forms(g));
    let theta = o.theta();
    let theta_inv = o.theta_inv();
    let gram = o.mu().gram();
    let gram_inv = theta_inv;
    let checks = vec![
        image_check("psi_to_j", &eq, &j, |psi| psi * theta),
        image_check("j_to_psi", &j, &eq, |jm| jm * theta_inv),
        image_check("j_to_form", &j, &forms, |jm| &jm.transpose() * gram),
        image_check("form_to_j", &forms, &j, |b| gram_inv * &b.transpose()),
        image_check("psi_to_coform", &eq, &coforms, Matrix::transpose),
        image_check("coform_to_psi", &coforms, &eq, Matrix::transpose),
    ];
    SquareReport {
        dim_j: j.dim(),
        dim_equivariant: eq.dim(),
        dim_forms: forms.dim(),
        dim_coforms: coforms.dim(),
        checks,
    }
}

/// `⟨f, g⟩_ψ = ⟨ψ(f), g⟩` as a bilinear form on `G*`.
pub fn psi_form(psi: &Matrix) -> BilinearForm {
    BilinearForm::new(psi.transpose())
}

/// `(ad*_x)^T C + C ad*_x = 0` for all basis `x`.
pub fn is_coadjoint_invariant(g: &LieAlgebra, form: &BilinearForm) -> bool {
    g.coad_basis()
        .iter()
        .all(|co| (&(&co.transpose() * form.gram()) + &(form.gram() * co)).is_zero())
}

/// Radical `{f : ⟨f, g⟩ = 0 for all g}` of a form on `G*`.
pub fn radical(form: &BilinearForm) -> Subspace {
    form.gram().kernel()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closedness {
    /// The full Chevalley–Eilenberg differential of `ω_ψ` vanishes.
    pub closed: bool,
    /// `ω_ψ([x, y], z) = 0` on all basis triples.
    pub closed_simplified: bool,
    pub image_in_center: bool,
    /// `dim [G, G] >= n - 1`.
    pub large_derived: bool,
    pub psi_zero: bool,
}

impl Closedness {
    /// Closedness agrees with the center criterion, and forces `ψ = 0` when the derived ideal is large.
    pub fn consistent(&self) -> bool {
        self.closed == self.image_in_center
            && self.closed == self.closed_simplified
            && (!(self.large_derived && self.closed) || self.psi_zero)
    }
}

pub fn omega_psi_closedness(o: &OrthogonalStructure, psi: &Matrix) -> Result<Closedness> {
    let g = o.algebra();
    let n = g.dim();
    o.check_shape(psi)?;
    if !spaces::equivariant_maps(g).contains_map(psi)? {
        return Err(Error::Contract("map is not equivariant".into()));
    }
    let w = o.omega_gram(psi);
    if !w.is_antisymmetric() {
        return Err(Error::Contract("ω_ψ is not skew".into()));
    }
    let omega = BilinearForm::new(w);
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .collect();
    let on = |a: usize, b: usize, c: usize| omega.eval(&g.bracket_basis(a, b), &unit_vec(n, c));
    let closed = par::map_slice(&triples, |&(i, j, k)| {
        (&(&on(i, j, k) + &on(j, k, i)) + &on(k, i, j)).is_zero()
    })
    .into_iter()
    .all(|z| z);
    let closed_simplified = par::map_range(n * n * n, |t| on(t / (n * n), (t / n) % n, t % n).is_zero())
        .into_iter()
        .all(|z| z);
    let center = g.center();
    let image_in_center = psi
        .column_vectors()
        .iter()
        .all(|v| center.contains_vector(v).unwrap_or(false));
    Ok(Closedness {
        closed,
        closed_simplified,
        image_in_center,
        large_derived: g.derived_ideal().dim() + 1 >= n,
        psi_zero: psi.is_zero(),
    })
}

/// For each oracle derivation of `D`, `m21 θ ∈ 𝒥` and `θ⁻¹ m12 ∈ der(G)`.
pub fn theorem_a_orthogonal(o: &OrthogonalStructure, a: &CotangentAnalysis) -> Check {
    let s = a.spaces();
    let basis = a.der_d().basis_maps();
    let failures: Vec<String> = par::map_slice(&basis, |m| {
        let phi = BlockMap::from_matrix(m).expect("2n x 2n");
        let mut out = Vec::new();
        if !s.centroid().contains_map(&(&phi.m21 * o.theta())).unwrap_or(false) {
            out.push("m21 θ not in the centroid".to_string());
        }
        if !s.der().contains_map(&(o.theta_inv() * &phi.m12)).unwrap_or(false) {
            out.push("θ⁻¹ m12 not a derivation".to_string());
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();
    Check {
        name: "orthogonal_block_form".into(),
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}
