//! Block decomposition of derivations of `D = G ⋉ G*`.
//!
//! A linear map of `D` is written in blocks relative to `D = G ⊕ G*`:
//! `φ(x, f) = (m11 x + m21 f, m12 x + m22 f)`. Every derivation splits as
//! `φ = φ_α + φ_j + φ_β + φ_ψ` with `α ∈ der(G)`, `j` in the centroid,
//! `β` a coadjoint cocycle and `ψ ∈ Ψ`. With `ad*_x = -ad(x)^T` the
//! `G*`-block of such a derivation is `m22 = -α^T + j^T`.

use std::sync::OnceLock;

use crate::cotangent::{build_cotangent, CotangentAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};
use crate::lie::LieAlgebra;
use crate::par;
use crate::spaces::{self, NamedSpace, SpaceCache};

/// A linear endomorphism of `D` stored by its four `n × n` blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    /// `G -> G`
    pub m11: Matrix,
    /// `G -> G*`
    pub m12: Matrix,
    /// `G* -> G`
    pub m21: Matrix,
    /// `G* -> G*`
    pub m22: Matrix,
}

impl BlockMap {
    pub fn zero(n: usize) -> Self {
        Self {
            m11: Matrix::zeros(n, n),
            m12: Matrix::zeros(n, n),
            m21: Matrix::zeros(n, n),
            m22: Matrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.m11.rows()
    }

    /// The `2n × 2n` matrix `[[m11, m21], [m12, m22]]` in the basis `(e_i, e^a)`.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(2 * n, 2 * n);
        self.m11.write_block(&mut m, 0, 0);
        self.m21.write_block(&mut m, 0, n);
        self.m12.write_block(&mut m, n, 0);
        self.m22.write_block(&mut m, n, n);
        m
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(Error::Dimension {
                expected: 2 * (m.rows() / 2),
                found: m.rows(),
            });
        }
        let n = m.rows() / 2;
        Ok(Self {
            m11: m.block(0, 0, n, n),
            m21: m.block(0, n, n, n),
            m12: m.block(n, 0, n, n),
            m22: m.block(n, n, n, n),
        })
    }

    pub fn flatten(&self) -> Vec<crate::exactlin::Scalar> {
        self.to_matrix().flatten()
    }

    pub fn add(&self, other: &BlockMap) -> BlockMap {
        BlockMap {
            m11: &self.m11 + &other.m11,
            m12: &self.m12 + &other.m12,
            m21: &self.m21 + &other.m21,
            m22: &self.m22 + &other.m22,
        }
    }

    /// Commutator in `gl(D)`.
    pub fn bracket(&self, other: &BlockMap) -> BlockMap {
        BlockMap::from_matrix(&self.to_matrix().commutator(&other.to_matrix()))
            .expect("commutator of 2n x 2n matrices")
    }

    pub fn is_zero(&self) -> bool {
        self.m11.is_zero() && self.m12.is_zero() && self.m21.is_zero() && self.m22.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbedKind {
    Alpha,
    J,
    Beta,
    Psi,
}

impl EmbedKind {
    pub fn name(self) -> &'static str {
        match self {
            EmbedKind::Alpha => "alpha",
            EmbedKind::J => "j",
            EmbedKind::Beta => "beta",
            EmbedKind::Psi => "psi",
        }
    }
}

/// Places a map in its block without checking membership.
pub fn embed_unchecked(kind: EmbedKind, map: &Matrix) -> BlockMap {
    let mut b = BlockMap::zero(map.rows());
    match kind {
        EmbedKind::Alpha => {
            b.m11 = map.clone();
            b.m22 = -map.transpose();
        }
        EmbedKind::J => b.m22 = map.transpose(),
        EmbedKind::Beta => b.m12 = map.clone(),
        EmbedKind::Psi => b.m21 = map.clone(),
    }
    b
}

/// The cotangent algebra of `G` together with lazily computed spaces on both
/// levels. `der(D)` is the brute-force oracle.
#[derive(Debug)]
pub struct CotangentAnalysis {
    spaces: SpaceCache,
    cotangent: CotangentAlgebra,
    der_d: OnceLock<NamedSpace>,
    inner_d: OnceLock<NamedSpace>,
}

impl CotangentAnalysis {
    pub fn new(g: &LieAlgebra) -> Self {
        Self {
            spaces: SpaceCache::new(g.clone()),
            cotangent: build_cotangent(g),
            der_d: OnceLock::new(),
            inner_d: OnceLock::new(),
        }
    }

    pub fn base(&self) -> &LieAlgebra {
        self.spaces.algebra()
    }

    pub fn n(&self) -> usize {
        self.base().dim()
    }

    pub fn spaces(&self) -> &SpaceCache {
        &self.spaces
    }

    pub fn cotangent(&self) -> &CotangentAlgebra {
        &self.cotangent
    }

    pub fn der_d(&self) -> &NamedSpace {
        self.der_d
            .get_or_init(|| spaces::derivations_of(self.cotangent.total()))
    }

    pub fn inner_d(&self) -> &NamedSpace {
        self.inner_d
            .get_or_init(|| spaces::inner_derivations(self.cotangent.total()))
    }

    fn space_for(&self, kind: EmbedKind) -> &NamedSpace {
        match kind {
            EmbedKind::Alpha => self.spaces.der(),
            EmbedKind::J => self.spaces.centroid(),
            EmbedKind::Beta => self.spaces.q(),
            EmbedKind::Psi => self.spaces.psi(),
        }
    }

    /// Embeds a map lying in the space that matches `kind`.
    pub fn embed(&self, kind: EmbedKind, map: &Matrix) -> Result<BlockMap> {
        self.space_for(kind)
            .require(map)
            .map_err(|_| Error::Contract(format!("{} map is not in its space", kind.name())))?;
        Ok(embed_unchecked(kind, map))
    }

    /// Embedded basis of each of the four component spaces, tagged.
    pub fn generators(&self, kinds: &[EmbedKind]) -> Vec<(EmbedKind, BlockMap)> {
        kinds
            .iter()
            .flat_map(|&k| {
                self.space_for(k)
                    .basis_maps()
                    .into_iter()
                    .map(move |m| (k, embed_unchecked(k, &m)))
            })
            .collect()
    }

    /// Image of `(α, j, β, ψ) ↦ φ_α + φ_j + φ_β + φ_ψ`, as flattened `2n × 2n` matrices.
    pub fn phi_assemble(&self) -> Subspace {
        let gens = self.generators(&[EmbedKind::Alpha, EmbedKind::J, EmbedKind::Beta, EmbedKind::Psi]);
        span_of(self.n(), &gens)
    }

    /// Splits a derivation of `D` into its four components.
    pub fn decompose(&self, phi: &BlockMap) -> Result<DerivationDecomposition> {
        if phi.n() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                found: phi.n(),
            });
        }
        if !self.der_d().contains_map(&phi.to_matrix())? {
            return Err(Error::Contract("map is not a derivation of D".into()));
        }
        let parts = DerivationDecomposition {
            alpha: phi.m11.clone(),
            j: &phi.m22.transpose() + &phi.m11,
            beta: phi.m12.clone(),
            psi: phi.m21.clone(),
        };
        for (kind, map) in parts.components() {
            if !self.space_for(kind).contains_map(map)? {
                return Err(Error::TheoremViolation(format!(
                    "{} component lies outside its space",
                    kind.name()
                )));
            }
        }
        Ok(parts)
    }
}

fn span_of(n: usize, gens: &[(EmbedKind, BlockMap)]) -> Subspace {
    let vectors = par::map_slice(gens, |(_, b)| b.flatten());
    Subspace::span(4 * n * n, vectors).expect("2n x 2n flattenings")
}

/// `(α, j, β, ψ)` with `φ(x, f) = (α x + ψ f, β x - f∘α + f∘j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationDecomposition {
    pub alpha: Matrix,
    pub j: Matrix,
    pub beta: Matrix,
    pub psi: Matrix,
}

impl DerivationDecomposition {
    pub fn components(&self) -> [(EmbedKind, &Matrix); 4] {
        [
            (EmbedKind::Alpha, &self.alpha),
            (EmbedKind::J, &self.j),
            (EmbedKind::Beta, &self.beta),
            (EmbedKind::Psi, &self.psi),
        ]
    }

    pub fn assemble(&self) -> BlockMap {
        self.components()
            .iter()
            .map(|(k, m)| embed_unchecked(*k, m))
            .reduce(|a, b| a.add(&b))
            .expect("four components")
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: failures.is_empty(),
            detail: failures.into_iter().take(5).collect::<Vec<_>>().join("; "),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TheoremAReport {
    pub der_d_dim: usize,
    pub assembled_dim: usize,
    /// `(dim der(G), dim J, dim Q, dim Ψ)`.
    pub component_dims: [usize; 4],
    pub checks: Vec<Check>,
}

impl TheoremAReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks that the assembled space equals the oracle `der(D)` and that every
/// oracle basis derivation satisfies the block relations.
pub fn verify_theorem_a(a: &CotangentAnalysis) -> TheoremAReport {
    let s = a.spaces();
    let component_dims = [s.der().dim(), s.centroid().dim(), s.q().dim(), s.psi().dim()];
    let (assembled, der_d) = par::join(|| a.phi_assemble(), || a.der_d());
    let mut checks = Vec::new();

    let sum: usize = component_dims.iter().sum();
    checks.push(Check::new(
        "phi_injective",
        if assembled.dim() == sum {
            vec![]
        } else {
            vec![format!("assembled dim {} != component sum {sum}", assembled.dim())]
        },
    ));
    checks.push(Check::new(
        "phi_equals_der_d",
        if assembled == der_d.space {
            vec![]
        } else {
            vec![format!(
                "assembled dim {} vs der(D) dim {}",
                assembled.dim(),
                der_d.dim()
            )]
        },
    ));

    let g = a.base();
    let coad = g.coad_basis();
    let basis = der_d.basis_maps();
    let failures: Vec<Vec<String>> = par::map_slice(&basis, |m| {
        let phi = BlockMap::from_matrix(m).expect("2n x 2n");
        let mut out = Vec::new();
        if !s.der().contains_map(&phi.m11).unwrap_or(false) {
            out.push("m11 not a derivation".to_string());
        }
        if !s.q().contains_map(&phi.m12).unwrap_or(false) {
            out.push("m12 not a coadjoint cocycle".to_string());
        }
        if !s.psi().contains_map(&phi.m21).unwrap_or(false) {
            out.push("m21 violates equivariance or commutation".to_string());
        }
        for (i, co) in coad.iter().enumerate() {
            let alpha_x = phi.m11.column(i);
            if phi.m22.commutator(co) != g.coad(&alpha_x).expect("length n") {
                out.push(format!("[m22, ad*_e{}] != ad*_(m11 e{})", i + 1, i + 1));
            }
        }
        let j = &phi.m22.transpose() + &phi.m11;
        if !s.centroid().contains_map(&j).unwrap_or(false) {
            out.push("m22^T + m11 not in the centroid".to_string());
        }
        out
    });
    checks.push(Check::new(
        "block_relations",
        failures.into_iter().flatten().collect(),
    ));

    TheoremAReport {
        der_d_dim: der_d.dim(),
        assembled_dim: assembled.dim(),
        component_dims,
        checks,
    }
}

#[derive(Debug, Clone)]
pub struct TheoremBReport {
    pub g1_dim: usize,
    pub g2_dim: usize,
    pub checks: Vec<Check>,
}

impl TheoremBReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn pairs(a: usize, b: usize, symmetric: bool) -> Vec<(usize, usize)> {
    (0..a)
        .flat_map(|i| {
            let start = if symmetric { i + 1 } else { 0 };
            (start..b).map(move |j| (i, j))
        })
        .collect()
}

/// Checks the `Z/2` grading `der(D) = g1 ⊕ g2` and the block bracket identities behind it.
pub fn verify_theorem_b(a: &CotangentAnalysis) -> TheoremBReport {
    let n = a.n();
    let s = a.spaces();
    let g1 = a.generators(&[EmbedKind::Alpha, EmbedKind::J]);
    let g2 = a.generators(&[EmbedKind::Beta, EmbedKind::Psi]);
    let (g1_space, g2_space) = par::join(|| span_of(n, &g1), || span_of(n, &g2));
    let mut checks = Vec::new();

    let inclusion = |name: &str, left: &[(EmbedKind, BlockMap)], right: &[(EmbedKind, BlockMap)], target: &Subspace| {
        let same = std::ptr::eq(left, right);
        let idx = pairs(left.len(), right.len(), same);
        let failures = par::map_slice(&idx, |&(i, j)| {
            let c = left[i].1.bracket(&right[j].1);
            (!target.contains_vector(&c.flatten()).unwrap_or(false)).then(|| format!("pair ({i}, {j})"))
        });
        Check::new(name, failures.into_iter().flatten().collect())
    };
    checks.push(inclusion("g1_g1_in_g1", &g1, &g1, &g1_space));
    checks.push(inclusion("g1_g2_in_g2", &g1, &g2, &g2_space));
    checks.push(inclusion("g2_g2_in_g1", &g2, &g2, &g1_space));

    let abelian = |name: &str, kind: EmbedKind| {
        let gens: Vec<&BlockMap> = g2.iter().filter(|(k, _)| *k == kind).map(|(_, b)| b).collect();
        let idx = pairs(gens.len(), gens.len(), true);
        let failures = par::map_slice(&idx, |&(i, j)| {
            (!gens[i].bracket(gens[j]).is_zero()).then(|| format!("pair ({i}, {j})"))
        });
        Check::new(name, failures.into_iter().flatten().collect())
    };
    checks.push(abelian("q_abelian", EmbedKind::Beta));
    checks.push(abelian("psi_abelian", EmbedKind::Psi));

    // [φ_β, φ_ψ] = φ_{-ψβ} + φ_j with j = (βψ)^T - ψβ; βψ ∈ ℰ, ψβ ∈ der(G).
    let q = s.q().basis_maps();
    let psi = s.psi().basis_maps();
    let idx = pairs(q.len(), psi.len(), false);
    let failures = par::map_slice(&idx, |&(i, k)| {
        let (beta, psi) = (&q[i], &psi[k]);
        let bracket = embed_unchecked(EmbedKind::Beta, beta).bracket(&embed_unchecked(EmbedKind::Psi, psi));
        let psi_beta = psi * beta;
        let beta_psi = beta * psi;
        let j = &beta_psi.transpose() - &psi_beta;
        let expected = embed_unchecked(EmbedKind::Alpha, &-&psi_beta).add(&embed_unchecked(EmbedKind::J, &j));
        let mut out = Vec::new();
        if bracket != expected {
            out.push(format!("closed form fails for beta {i}, psi {k}"));
        }
        if !s.der().contains_map(&psi_beta).unwrap_or(false) {
            out.push(format!("psi∘beta not a derivation ({i}, {k})"));
        }
        if !s.xi().e.contains_map(&beta_psi).unwrap_or(false) {
            out.push(format!("beta∘psi not in E ({i}, {k})"));
        }
        if !s.centroid().contains_map(&j).unwrap_or(false) {
            out.push(format!("j-correction not in centroid ({i}, {k})"));
        }
        out
    });
    checks.push(Check::new(
        "beta_psi_closed_form",
        failures.into_iter().flatten().collect(),
    ));

    let idx = pairs(g1.len(), g1.len(), true);
    let failures = par::map_slice(&idx, |&(i, j)| {
        let c = g1[i].1.bracket(&g1[j].1);
        (!(c.m12.is_zero() && c.m21.is_zero())).then(|| format!("pair ({i}, {j})"))
    });
    checks.push(Check::new("g1_block_diagonal", failures.into_iter().flatten().collect()));

    let overlap = g1_space.intersection(&g2_space).expect("same ambient");
    checks.push(Check::new(
        "g1_g2_direct",
        if overlap.is_zero() {
            vec![]
        } else {
            vec![format!("g1 ∩ g2 has dim {}", overlap.dim())]
        },
    ));

    TheoremBReport {
        g1_dim: g1_space.dim(),
        g2_dim: g2_space.dim(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{int, unit_vec, vec_from_i64};

    #[test]
    fn block_round_trip() {
        let m = Matrix::from_fn(4, 4, |r, c| int((r * 4 + c) as i64));
        let b = BlockMap::from_matrix(&m).unwrap();
        assert_eq!(b.m21, Matrix::from_i64(&[&[2, 3], &[6, 7]]));
        assert_eq!(b.m12, Matrix::from_i64(&[&[8, 9], &[12, 13]]));
        assert_eq!(b.to_matrix(), m);
    }

    #[test]
    fn embedded_alpha_matches_inner_derivation() {
        let g = catalog::sl2();
        let a = CotangentAnalysis::new(&g);
        let x0 = vec_from_i64(&[1, 2, -1]);
        let ad = g.ad(&x0).unwrap();
        let phi = a.embed(EmbedKind::Alpha, &ad).unwrap();
        // m22 = -ad(x0)^T = ad*_{x0}
        assert_eq!(phi.m22, g.coad(&x0).unwrap());
        let total = a.cotangent().total();
        let ad_d = total.ad(&a.cotangent().pair(&x0, &crate::exactlin::zero_vec(3))).unwrap();
        assert_eq!(phi.to_matrix(), ad_d);
    }

    #[test]
    fn identity_j_and_zero_psi() {
        let a = CotangentAnalysis::new(&catalog::sl2());
        let phi = a.embed(EmbedKind::J, &Matrix::identity(3)).unwrap();
        assert!(a.der_d().contains_map(&phi.to_matrix()).unwrap());
        let v = a.cotangent().pair(&unit_vec(3, 1), &unit_vec(3, 2));
        assert_eq!(phi.to_matrix().mul_vec(&v), a.cotangent().pair(&crate::exactlin::zero_vec(3), &unit_vec(3, 2)));
        assert!(embed_unchecked(EmbedKind::Psi, &Matrix::zeros(3, 3)).is_zero());
        assert!(a.embed(EmbedKind::Psi, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn inner_derivation_decomposes() {
        let g = catalog::heisenberg3();
        let a = CotangentAnalysis::new(&g);
        let x0 = vec_from_i64(&[1, -2, 3]);
        let f0 = vec_from_i64(&[2, 1, -1]);
        let ad = a.cotangent().total().ad(&a.cotangent().pair(&x0, &f0)).unwrap();
        let parts = a.decompose(&BlockMap::from_matrix(&ad).unwrap()).unwrap();
        assert_eq!(parts.alpha, g.ad(&x0).unwrap());
        assert!(parts.j.is_zero());
        assert!(parts.psi.is_zero());
        // beta(x) = -ad*_x f0
        for i in 0..3 {
            let expected = -g.coad(&unit_vec(3, i)).unwrap();
            assert_eq!(parts.beta.column(i), expected.mul_vec(&f0));
        }
        assert_eq!(parts.assemble().to_matrix(), ad);
    }

    #[test]
    fn decompose_rejects_non_derivations() {
        let a = CotangentAnalysis::new(&catalog::sl2());
        let mut bad = BlockMap::zero(3);
        bad.m11 = Matrix::identity(3);
        assert!(matches!(a.decompose(&bad), Err(Error::Contract(_))));
    }

    #[test]
    fn theorem_a_small_cases() {
        for (g, expected) in [(catalog::sl2(), 7), (LieAlgebra::abelian(2), 16), (catalog::aff1(), 0)] {
            let a = CotangentAnalysis::new(&g);
            let report = verify_theorem_a(&a);
            assert!(report.passed(), "{:?}", report.checks);
            if expected > 0 {
                assert_eq!(report.der_d_dim, expected);
            }
        }
    }

    #[test]
    fn theorem_b_small_cases() {
        for g in [catalog::sl2(), LieAlgebra::abelian(2), catalog::heisenberg3()] {
            let report = verify_theorem_b(&CotangentAnalysis::new(&g));
            assert!(report.passed(), "{:?}", report.checks);
        }
        let report = verify_theorem_b(&CotangentAnalysis::new(&catalog::sl2()));
        assert_eq!(report.g2_dim, 3);
    }
}
