//! Built-in test algebras with known metadata.

use crate::exactlin::{int, Matrix};
use crate::lie::{BilinearForm, LieAlgebra, StructureConstants};

/// Known facts about a catalog algebra: `p` simple factors, `k`-dimensional center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Meta {
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub semisimple: bool,
    pub compact_type: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub meta: Meta,
    /// Named invariant nondegenerate symmetric forms.
    pub metrics: Vec<(String, BilinearForm)>,
}

impl CatalogEntry {
    pub fn metric(&self) -> Option<&BilinearForm> {
        self.metrics.first().map(|(_, m)| m)
    }
}

fn named(names: &[&str], sc: StructureConstants) -> LieAlgebra {
    LieAlgebra::new(names.iter().map(|s| s.to_string()).collect(), sc)
        .expect("catalog structure constants are valid")
}

/// `aff(1)`: `[e1, e2] = e2`.
pub fn aff1() -> LieAlgebra {
    let mut sc = StructureConstants::zeros(2);
    sc.set(0, 1, 1, int(1));
    named(&["e1", "e2"], sc)
}

/// Heisenberg algebra: `[e1, e2] = e3`.
pub fn heisenberg3() -> LieAlgebra {
    let mut sc = StructureConstants::zeros(3);
    sc.set(0, 1, 2, int(1));
    named(&["e1", "e2", "e3"], sc)
}

/// `sl(2)` in the basis `(h, e, f)`.
pub fn sl2() -> LieAlgebra {
    let mut sc = StructureConstants::zeros(3);
    sc.set(0, 1, 1, int(2));
    sc.set(0, 2, 2, int(-2));
    sc.set(1, 2, 0, int(1));
    named(&["h", "e", "f"], sc)
}

/// `so(3)`: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn so3() -> LieAlgebra {
    let mut sc = StructureConstants::zeros(3);
    sc.set(0, 1, 2, int(1));
    sc.set(1, 2, 0, int(1));
    sc.set(2, 0, 1, int(1));
    named(&["e1", "e2", "e3"], sc)
}

/// Direct sum with block-diagonal structure constants. Basis names of `b`
/// that collide with names of `a` get a trailing prime.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (n, m) = (a.dim(), b.dim());
    let mut sc = StructureConstants::zeros(n + m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                sc.set_raw(i, j, k, a.structure().get(i, j, k).clone());
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                sc.set_raw(n + i, n + j, n + k, b.structure().get(i, j, k).clone());
            }
        }
    }
    let mut names: Vec<String> = a.basis_names().to_vec();
    for name in b.basis_names() {
        let mut candidate = name.clone();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    LieAlgebra::new(names, sc).expect("direct sum of Lie algebras is a Lie algebra")
}

/// Block-diagonal form `a ⊕ b`.
pub fn direct_sum_form(a: &BilinearForm, b: &BilinearForm) -> BilinearForm {
    let (n, m) = (a.dim(), b.dim());
    let mut g = Matrix::zeros(n + m, n + m);
    a.gram().write_block(&mut g, 0, 0);
    b.gram().write_block(&mut g, n, n);
    BilinearForm::new(g)
}

fn abelian_entry(n: usize) -> CatalogEntry {
    CatalogEntry {
        name: format!("abelian{n}"),
        algebra: LieAlgebra::abelian(n),
        meta: Meta {
            p: Some(0),
            k: Some(n),
            semisimple: false,
            compact_type: true,
        },
        metrics: vec![("identity".into(), BilinearForm::new(Matrix::identity(n)))],
    }
}

fn so3_plus_abelian(k: usize) -> CatalogEntry {
    let so3 = so3();
    let algebra = direct_sum(&so3, &LieAlgebra::abelian(k));
    let metric = direct_sum_form(&so3.killing_form(), &BilinearForm::new(Matrix::identity(k)));
    CatalogEntry {
        name: format!("so3+ab{k}"),
        algebra,
        meta: Meta {
            p: Some(1),
            k: Some(k),
            semisimple: false,
            compact_type: true,
        },
        metrics: vec![("killing+identity".into(), metric)],
    }
}

/// All built-in entries, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let semisimple = |p: usize, compact: bool| Meta {
        p: Some(p),
        k: Some(0),
        semisimple: true,
        compact_type: compact,
    };
    let sl2 = sl2();
    let so3 = so3();
    let sl2_sq = direct_sum(&sl2, &sl2);
    vec![
        abelian_entry(1),
        abelian_entry(2),
        abelian_entry(3),
        CatalogEntry {
            name: "aff1".into(),
            algebra: aff1(),
            meta: Meta::default(),
            metrics: vec![],
        },
        CatalogEntry {
            name: "heisenberg3".into(),
            algebra: heisenberg3(),
            meta: Meta::default(),
            metrics: vec![],
        },
        CatalogEntry {
            name: "sl2".into(),
            metrics: vec![("killing".into(), sl2.killing_form())],
            algebra: sl2,
            meta: semisimple(1, false),
        },
        CatalogEntry {
            name: "so3".into(),
            metrics: vec![("killing".into(), so3.killing_form())],
            algebra: so3,
            meta: semisimple(1, true),
        },
        CatalogEntry {
            name: "sl2+sl2".into(),
            metrics: vec![("killing".into(), sl2_sq.killing_form())],
            algebra: sl2_sq,
            meta: semisimple(2, false),
        },
        so3_plus_abelian(1),
        so3_plus_abelian(2),
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metadata_matches_computed_predicates() {
        for entry in catalog() {
            let g = &entry.algebra;
            assert_eq!(entry.meta.semisimple, g.is_semisimple(), "{}", entry.name);
            if let Some(k) = entry.meta.k {
                assert_eq!(k, g.center().dim(), "{}", entry.name);
            }
            for (name, m) in &entry.metrics {
                assert!(m.is_symmetric() && m.is_nondegenerate(), "{} {name}", entry.name);
                assert!(g.is_invariant(m), "{} {name}", entry.name);
            }
        }
    }

    #[test]
    fn lookups() {
        assert!(lookup("sl2").unwrap().meta.semisimple);
        assert!(!lookup("heisenberg3").unwrap().meta.semisimple);
        let m = lookup("so3+ab1").unwrap().meta;
        assert_eq!((m.p, m.k, m.compact_type), (Some(1), Some(1), true));
        assert!(lookup("e8").is_none());
    }

    #[test]
    fn direct_sums() {
        let ab = direct_sum(&LieAlgebra::abelian(1), &LieAlgebra::abelian(1));
        assert_eq!(ab.structure(), LieAlgebra::abelian(2).structure());
        let s = direct_sum(&sl2(), &sl2());
        assert_eq!((s.dim(), s.center().dim(), s.derived_ideal().dim()), (6, 0, 6));
        assert_eq!(s.basis_names()[3], "h'");
        assert_eq!(direct_sum(&so3(), &LieAlgebra::abelian(1)).center().dim(), 1);
    }
}
