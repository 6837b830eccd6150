//! First cohomology of `G` with adjoint and coadjoint coefficients, of `D`
//! with adjoint coefficients, and the dimension formula for `H^1(D, D)`.

use std::fmt;

use crate::catalog::Meta;
use crate::cochain::{adjoint_rep, coadjoint_rep, d1_kernel};
use crate::error::{Error, Result};
use crate::exactlin::{self, Matrix, Scalar, Subspace};
use crate::lie::LieAlgebra;
use crate::par;
use crate::structure::CotangentAnalysis;

/// Which closed form supplied the expected `dim H^1(D, D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaTag {
    /// Semisimple with `p` simple factors: `p`.
    SimpleP,
    /// Compact type with `k`-dimensional center: `4k² + p`.
    Compact4k2P,
    /// No metadata: the sum of the four component dimensions.
    GenericSum,
}

impl fmt::Display for FormulaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaTag::SimpleP => "SIMPLE_P",
            FormulaTag::Compact4k2P => "COMPACT_4K2_P",
            FormulaTag::GenericSum => "GENERIC_SUM",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub h1_gg: usize,
    pub h1_ggstar: usize,
    pub dim_j: usize,
    pub dim_psi: usize,
    /// `dim der(D) - dim inner(D)`, computed from the brute-force derivation space.
    pub h1_dd: usize,
    /// `h1_gg + dim_j + h1_ggstar + dim_psi`.
    pub structural_sum: usize,
    pub theorem_c_expected: Option<(usize, FormulaTag)>,
    /// The expected value (or the structural sum when none) equals `h1_dd`.
    pub formula_match: bool,
    /// `Z(D) = Z(G) ⊕ ann[G, G]` and `dim inner(D) = 2n - dim Z(D)`.
    pub center_consistent: bool,
}

impl CohomologyReport {
    pub fn additive(&self) -> bool {
        self.h1_dd == self.structural_sum
    }
}

/// Expected `dim H^1(D, D)` from metadata: `4k² + p` with a `k`-dimensional
/// center, `p` when the center is trivial.
pub fn theorem_c_formula(meta: &Meta) -> Option<(usize, FormulaTag)> {
    let p = meta.p?;
    match meta.k.unwrap_or(0) {
        0 => Some((p, FormulaTag::SimpleP)),
        k => Some((4 * k * k + p, FormulaTag::Compact4k2P)),
    }
}

/// Annihilator of `sub` in the dual space.
fn annihilator(sub: &Subspace) -> Subspace {
    let n = sub.ambient_dim();
    Matrix::from_rows(n, sub.basis().to_vec())
        .expect("basis vectors have ambient length")
        .kernel()
}

/// `Z(G) ⊕ ann[G, G]` inside `D = G ⊕ G*`.
pub fn predicted_center_of_cotangent(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let z = g.center();
    let ann = annihilator(&g.derived_ideal());
    let mut vectors: Vec<Vec<Scalar>> = z
        .basis()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(exactlin::zero_vec(n));
            w
        })
        .collect();
    vectors.extend(ann.basis().iter().map(|f| {
        let mut w = exactlin::zero_vec(n);
        w.extend(f.iter().cloned());
        w
    }));
    Subspace::span(2 * n, vectors).expect("length 2n")
}

/// `(h1_gg, h1_ggstar, dim J, dim Ψ)`, computed without `der(D)`.
pub fn structural_components(analysis: &CotangentAnalysis) -> (usize, usize, usize, usize) {
    let g = analysis.base();
    let ((h1_gg, h1_ggstar), (dim_j, dim_psi)) = par::join(
        || {
            par::join(
                || d1_kernel(&adjoint_rep(g)).h1_dim,
                || d1_kernel(&coadjoint_rep(g)).h1_dim,
            )
        },
        || par::join(|| analysis.spaces().centroid().dim(), || analysis.spaces().psi().dim()),
    );
    (h1_gg, h1_ggstar, dim_j, dim_psi)
}

pub fn h1_report(analysis: &CotangentAnalysis, meta: Option<&Meta>) -> CohomologyReport {
    let g = analysis.base();
    let n = g.dim();
    let (h1_gg, h1_ggstar, dim_j, dim_psi) = structural_components(analysis);
    let (der_d, inner_d) = par::join(|| analysis.der_d().dim(), || analysis.inner_d().dim());
    let h1_dd = der_d - inner_d;
    let structural_sum = h1_gg + dim_j + h1_ggstar + dim_psi;

    let theorem_c_expected = Some(
        meta.and_then(theorem_c_formula)
            .unwrap_or((structural_sum, FormulaTag::GenericSum)),
    );
    let formula_match = theorem_c_expected.is_some_and(|(v, _)| v == h1_dd);

    let center_d = analysis.cotangent().total().center();
    let center_consistent =
        center_d == predicted_center_of_cotangent(g) && inner_d == 2 * n - center_d.dim();

    CohomologyReport {
        h1_gg,
        h1_ggstar,
        dim_j,
        dim_psi,
        h1_dd,
        structural_sum,
        theorem_c_expected,
        formula_match,
        center_consistent,
    }
}

/// For semisimple `G` and `β ∈ Q`, finds `f0` with `β(x) = -ad*_x f0`.
pub fn semisimple_cocycle_form(g: &LieAlgebra, beta: &Matrix) -> Result<Vec<Scalar>> {
    let n = g.dim();
    if beta.rows() != n || beta.cols() != n {
        return Err(Error::Dimension {
            expected: n,
            found: beta.rows(),
        });
    }
    if !g.is_semisimple() {
        return Err(Error::Contract("algebra is not semisimple".into()));
    }
    if !coadjoint_rep(g).is_cocycle(beta) {
        return Err(Error::Contract("beta is not a coadjoint cocycle".into()));
    }
    // Stack the conditions -ad*_{e_i} f0 = β(e_i) for all i.
    let coad = g.coad_basis();
    let rows: Vec<Vec<Scalar>> = coad
        .iter()
        .flat_map(|c| (-c).row_vectors())
        .collect();
    let rhs: Vec<Scalar> = (0..n).flat_map(|i| beta.column(i)).collect();
    Matrix::from_rows(n, rows)?
        .solve(&rhs)?
        .ok_or_else(|| Error::TheoremViolation("cocycle is not a coboundary".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::{unit_vec, vec_from_i64};

    fn report(g: &LieAlgebra, meta: Option<&Meta>) -> CohomologyReport {
        h1_report(&CotangentAnalysis::new(g), meta)
    }

    #[test]
    fn sl2_has_one_dimensional_h1() {
        let e = catalog::lookup("sl2").unwrap();
        let r = report(&e.algebra, Some(&e.meta));
        assert_eq!((r.h1_gg, r.h1_ggstar, r.dim_j, r.dim_psi, r.h1_dd), (0, 0, 1, 0, 1));
        assert_eq!(r.theorem_c_expected, Some((1, FormulaTag::SimpleP)));
        assert!(r.formula_match && r.additive() && r.center_consistent);
    }

    #[test]
    fn non_semisimple_additivity() {
        for g in [catalog::heisenberg3(), catalog::aff1()] {
            let r = report(&g, None);
            assert!(r.additive(), "{r:?}");
            assert!(r.center_consistent);
            assert_eq!(r.theorem_c_expected.unwrap().1, FormulaTag::GenericSum);
        }
    }

    #[test]
    fn abelian_formula() {
        let e = catalog::lookup("abelian2").unwrap();
        let r = report(&e.algebra, Some(&e.meta));
        assert_eq!(r.h1_dd, 16);
        assert_eq!(r.theorem_c_expected, Some((16, FormulaTag::Compact4k2P)));
    }

    #[test]
    fn cotangent_center_of_heisenberg() {
        // Z(G) = <e3>, [G, G] = <e3>, so ann[G, G] = <e^1, e^2>.
        let z = predicted_center_of_cotangent(&catalog::heisenberg3());
        assert_eq!(z.dim(), 3);
        assert!(z.contains_vector(&unit_vec(6, 2)).unwrap());
        assert!(z.contains_vector(&unit_vec(6, 3)).unwrap());
        assert!(!z.contains_vector(&unit_vec(6, 5)).unwrap());
    }

    #[test]
    fn recovers_coboundary_form() {
        for g in [catalog::sl2(), catalog::so3()] {
            let f0 = vec_from_i64(&[3, -1, 2]);
            let cols: Vec<Vec<Scalar>> = g
                .coad_basis()
                .iter()
                .map(|c| (-c).mul_vec(&f0))
                .collect();
            let beta = Matrix::from_columns(3, &cols).unwrap();
            assert_eq!(semisimple_cocycle_form(&g, &beta).unwrap(), f0);
        }
        let zero = semisimple_cocycle_form(&catalog::sl2(), &Matrix::zeros(3, 3)).unwrap();
        assert!(exactlin::is_zero_vec(&zero));
        assert!(semisimple_cocycle_form(&catalog::heisenberg3(), &Matrix::zeros(3, 3)).is_err());
    }
}
