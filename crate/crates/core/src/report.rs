//! Full analysis of one algebra, as a serializable report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::cohomology::{h1_report, structural_components, theorem_c_formula, FormulaTag};
use crate::cotangent::build_cotangent;
use crate::error::Result;
use crate::format::AlgebraInput;
use crate::orthogonal::{j_psi_bilinear_square, omega_psi_closedness, theorem_a_orthogonal, OrthogonalStructure};
use crate::par;
use crate::structure::{verify_theorem_a, verify_theorem_b, Check, CotangentAnalysis};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckKind {
    A,
    B,
    C,
    Orthogonal,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [CheckKind::A, CheckKind::B, CheckKind::C, CheckKind::Orthogonal];
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub checks: BTreeSet<CheckKind>,
    /// Compute `der(D)` by brute force.
    pub oracle: bool,
    /// Zero all timings so reports are reproducible byte for byte.
    pub stable: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            checks: CheckKind::ALL.into_iter().collect(),
            oracle: true,
            stable: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl From<Check> for CheckOutcome {
    fn from(c: Check) -> Self {
        Self {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub reason: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckOutcome>,
}

impl Verdict {
    pub fn skipped(reason: &str) -> Self {
        Self {
            status: Status::Skipped,
            reason: reason.to_string(),
            checks: vec![],
        }
    }

    fn from_checks(checks: Vec<Check>) -> Self {
        let checks: Vec<CheckOutcome> = checks.into_iter().map(Into::into).collect();
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Self {
            status: if failed.is_empty() { Status::Pass } else { Status::Fail },
            reason: if failed.is_empty() {
                String::new()
            } else {
                format!("failed: {}", failed.join(", "))
            },
            checks,
        }
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: if passed { String::new() } else { detail },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetaSummary {
    pub p: Option<usize>,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub semisimple: bool,
    pub has_metric: bool,
    pub meta: Option<MetaSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceDims {
    pub der: usize,
    pub inner: usize,
    pub centroid: usize,
    pub cocycles: usize,
    pub equivariant: usize,
    pub psi: usize,
    pub xi_e: usize,
    pub xi_s: usize,
    pub der_d: Option<usize>,
    pub inner_d: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub value: usize,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologySection {
    pub h1_gg: usize,
    pub h1_ggstar: usize,
    pub dim_j: usize,
    pub dim_psi: usize,
    pub structural_sum: usize,
    pub h1_dd: Option<usize>,
    pub expected: Option<Expected>,
    pub formula_match: Option<bool>,
    pub additive: Option<bool>,
    pub center_consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosednessEntry {
    pub index: usize,
    pub closed: bool,
    pub closed_simplified: bool,
    pub image_in_center: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalSection {
    pub dim_j: usize,
    pub dim_equivariant: usize,
    pub dim_invariant_forms: usize,
    pub dim_coadjoint_invariant_forms: usize,
    pub skew_equivariant: usize,
    pub closedness: Vec<ClosednessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub theorem_a: Verdict,
    pub theorem_b: Verdict,
    pub theorem_c: Verdict,
    pub orthogonal: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub algebra: AlgebraSummary,
    pub spaces: SpaceDims,
    pub verdicts: Verdicts,
    pub cohomology: Option<CohomologySection>,
    pub orthogonal: Option<OrthogonalSection>,
    pub timings_ms: BTreeMap<String, u64>,
}

struct Timer {
    stable: bool,
    phases: BTreeMap<String, u64>,
}

impl Timer {
    fn run<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = if self.stable { 0 } else { start.elapsed().as_millis() as u64 };
        self.phases.insert(phase.to_string(), ms);
        out
    }
}

/// Runs the requested checks. Fails only when the metric is not a valid
/// orthogonal structure; theorem mismatches are recorded in the verdicts.
pub fn analyze(input: &AlgebraInput, options: &AnalyzeOptions) -> Result<Report> {
    let g = &input.algebra;
    let wants = |k| options.checks.contains(&k);
    let mut timer = Timer {
        stable: options.stable,
        phases: BTreeMap::new(),
    };

    let orthogonal = match (&input.metric, wants(CheckKind::Orthogonal)) {
        (Some(mu), true) => Some(OrthogonalStructure::new(g.clone(), mu.clone())?),
        _ => None,
    };

    let analysis = CotangentAnalysis::new(g);
    timer.run("spaces", || analysis.spaces().warm());
    if options.oracle {
        timer.run("oracle", || {
            par::join(|| analysis.der_d(), || analysis.inner_d());
        });
    }
    let s = analysis.spaces();
    let spaces = SpaceDims {
        der: s.der().dim(),
        inner: s.inner().dim(),
        centroid: s.centroid().dim(),
        cocycles: s.q().dim(),
        equivariant: s.equivariant().dim(),
        psi: s.psi().dim(),
        xi_e: s.xi().e.dim(),
        xi_s: s.xi().s.dim(),
        der_d: options.oracle.then(|| analysis.der_d().dim()),
        inner_d: options.oracle.then(|| analysis.inner_d().dim()),
    };

    let theorem_a = if !wants(CheckKind::A) {
        Verdict::skipped("not requested")
    } else if !options.oracle {
        Verdict::skipped("oracle disabled")
    } else {
        timer.run("theorem_a", || Verdict::from_checks(verify_theorem_a(&analysis).checks))
    };
    let theorem_b = if wants(CheckKind::B) {
        timer.run("theorem_b", || Verdict::from_checks(verify_theorem_b(&analysis).checks))
    } else {
        Verdict::skipped("not requested")
    };

    let (theorem_c, cohomology) = if wants(CheckKind::C) {
        timer.run("cohomology", || cohomology_section(&analysis, input, options.oracle))
    } else {
        (Verdict::skipped("not requested"), None)
    };

    let (orthogonal_verdict, orthogonal_section) = match &orthogonal {
        Some(o) => timer.run("orthogonal", || orthogonal_section(o, &analysis, options.oracle)),
        None if !wants(CheckKind::Orthogonal) => (Verdict::skipped("not requested"), None),
        None => (Verdict::skipped("no metric supplied"), None),
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        algebra: AlgebraSummary {
            name: input.name.clone(),
            dim: g.dim(),
            basis: g.basis_names().to_vec(),
            center_dim: g.center().dim(),
            derived_dim: g.derived_ideal().dim(),
            semisimple: g.is_semisimple(),
            has_metric: input.metric.is_some(),
            meta: input.meta.map(|m| MetaSummary { p: m.p, k: m.k }),
        },
        spaces,
        verdicts: Verdicts {
            theorem_a,
            theorem_b,
            theorem_c,
            orthogonal: orthogonal_verdict,
        },
        cohomology,
        orthogonal: orthogonal_section,
        timings_ms: timer.phases,
    })
}

fn expected(value: usize, tag: FormulaTag) -> Expected {
    Expected {
        value,
        formula: tag.to_string(),
    }
}

fn cohomology_section(a: &CotangentAnalysis, input: &AlgebraInput, oracle: bool) -> (Verdict, Option<CohomologySection>) {
    if !oracle {
        let (h1_gg, h1_ggstar, dim_j, dim_psi) = structural_components(a);
        let structural_sum = h1_gg + h1_ggstar + dim_j + dim_psi;
        let formula = input
            .meta
            .as_ref()
            .and_then(theorem_c_formula)
            .unwrap_or((structural_sum, FormulaTag::GenericSum));
        let section = CohomologySection {
            h1_gg,
            h1_ggstar,
            dim_j,
            dim_psi,
            structural_sum,
            h1_dd: None,
            expected: Some(expected(formula.0, formula.1)),
            formula_match: None,
            additive: None,
            center_consistent: None,
        };
        return (Verdict::skipped("oracle disabled"), Some(section));
    }
    let r = h1_report(a, input.meta.as_ref());
    let checks = vec![
        check(
            "additivity",
            r.additive(),
            format!("h1_dd {} != structural sum {}", r.h1_dd, r.structural_sum),
        ),
        check(
            "formula",
            r.formula_match,
            format!("h1_dd {} != expected {:?}", r.h1_dd, r.theorem_c_expected.map(|e| e.0)),
        ),
        check("center_of_d", r.center_consistent, "Z(D) != Z(G) + ann[G, G]".into()),
    ];
    let section = CohomologySection {
        h1_gg: r.h1_gg,
        h1_ggstar: r.h1_ggstar,
        dim_j: r.dim_j,
        dim_psi: r.dim_psi,
        structural_sum: r.structural_sum,
        h1_dd: Some(r.h1_dd),
        expected: r.theorem_c_expected.map(|(v, t)| expected(v, t)),
        formula_match: Some(r.formula_match),
        additive: Some(r.additive()),
        center_consistent: Some(r.center_consistent),
    };
    (Verdict::from_checks(checks), Some(section))
}

fn orthogonal_section(o: &OrthogonalStructure, a: &CotangentAnalysis, oracle: bool) -> (Verdict, Option<OrthogonalSection>) {
    let s = a.spaces();
    let mut checks = vec![check("equivariance", o.equivariance_holds(), "θ ad != ad* θ".into())];

    let q = s.q().basis_maps();
    let transported: Vec<_> = q.iter().filter_map(|b| o.transport_cocycle(b).ok()).collect();
    let images_ok = transported.len() == q.len()
        && transported.iter().all(|d| s.der().contains_map(d).unwrap_or(false));
    checks.push(check(
        "cocycles_to_derivations",
        images_ok && q.len() == s.der().dim(),
        format!("dim Q {} vs dim der {}", q.len(), s.der().dim()),
    ));

    let e = s.xi().e.basis_maps();
    let xi_ok = e.iter().all(|xi| {
        o.transport_xi(xi)
            .map(|t| s.xi().s.contains_map(&t).unwrap_or(false))
            .unwrap_or(false)
    });
    checks.push(check("e_to_s", xi_ok, "θ-conjugate of an E element left S".into()));

    let square = j_psi_bilinear_square(o);
    checks.push(check(
        "four_spaces_dims",
        square.dims_equal(),
        format!(
            "dims {} {} {} {}",
            square.dim_j, square.dim_equivariant, square.dim_forms, square.dim_coforms
        ),
    ));
    checks.extend(square.checks.iter().cloned());

    if oracle {
        checks.push(theorem_a_orthogonal(o, a));
    }

    let d = build_cotangent(o.algebra());
    checks.push(check(
        "cotangent_duality_pairing",
        OrthogonalStructure::of_cotangent(&d).is_ok(),
        "μ0 is not an orthogonal structure on D".into(),
    ));

    let skew = o.skew_equivariant_maps();
    let closedness: Vec<ClosednessEntry> = skew
        .iter()
        .enumerate()
        .filter_map(|(index, psi)| {
            omega_psi_closedness(o, psi).ok().map(|c| ClosednessEntry {
                index,
                closed: c.closed,
                closed_simplified: c.closed_simplified,
                image_in_center: c.image_in_center,
                consistent: c.consistent(),
            })
        })
        .collect();
    checks.push(check(
        "omega_closedness",
        closedness.len() == skew.len() && closedness.iter().all(|c| c.consistent),
        "closedness disagrees with the center criterion".into(),
    ));

    let section = OrthogonalSection {
        dim_j: square.dim_j,
        dim_equivariant: square.dim_equivariant,
        dim_invariant_forms: square.dim_forms,
        dim_coadjoint_invariant_forms: square.dim_coforms,
        skew_equivariant: skew.len(),
        closedness,
    };
    (Verdict::from_checks(checks), Some(section))
}

impl Report {
    pub fn verdict_list(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("theorem A", &self.verdicts.theorem_a),
            ("theorem B", &self.verdicts.theorem_b),
            ("theorem C", &self.verdicts.theorem_c),
            ("orthogonal", &self.verdicts.orthogonal),
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.verdict_list().iter().all(|(_, v)| v.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types always serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(
            out,
            "{} (dim {}, center {}, derived {}, {})",
            a.name.as_deref().unwrap_or("algebra"),
            a.dim,
            a.center_dim,
            a.derived_dim,
            if a.semisimple { "semisimple" } else { "not semisimple" }
        );
        let s = &self.spaces;
        let _ = writeln!(
            out,
            "  der {}  inner {}  J {}  Q {}  equivariant {}  Psi {}  E {}  S {}",
            s.der, s.inner, s.centroid, s.cocycles, s.equivariant, s.psi, s.xi_e, s.xi_s
        );
        if let Some(d) = s.der_d {
            let _ = writeln!(out, "  der(D) {d}");
        }
        if let Some(c) = &self.cohomology {
            let h1 = c.h1_dd.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "  H1(G,G) {}  J {}  H1(G,G*) {}  Psi {}  sum {}  H1(D,D) {}",
                c.h1_gg, c.dim_j, c.h1_ggstar, c.dim_psi, c.structural_sum, h1
            );
        }
        for (name, v) in self.verdict_list() {
            let status = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            if v.reason.is_empty() {
                let _ = writeln!(out, "  {name}: {status}");
            } else {
                let _ = writeln!(out, "  {name}: {status} ({})", v.reason);
            }
        }
        out
    }
}
