//! Acceptance suite: one pass/fail line per criterion, exact arithmetic throughout.

use std::time::{Duration, Instant};

use cotangent_core::catalog::{self, CatalogEntry};
use cotangent_core::cohomology::{h1_report, semisimple_cocycle_form};
use cotangent_core::cotangent::{
    build_cotangent, double_from_r, duality_gram, duality_pairing, semidirect_structure, CoadjointConvention, RMatrix,
};
use cotangent_core::exactlin::{int, Matrix, Scalar, Subspace};
use cotangent_core::format::{self, AlgebraFile, AlgebraInput};
use cotangent_core::orthogonal::{j_psi_bilinear_square, omega_psi_closedness, OrthogonalStructure};
use cotangent_core::report::{analyze, AnalyzeOptions};
use cotangent_core::structure::{verify_theorem_a, verify_theorem_b, CotangentAnalysis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn entry(name: &str) -> CatalogEntry {
    catalog::lookup(name).expect("catalog entry")
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Matrix]) -> Matrix {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    basis
        .iter()
        .fold(Matrix::zeros(r, c), |acc, m| &acc + &m.scale(&int(rng.gen_range(-4..=4))))
}

fn theorem_a_oracle() -> Outcome {
    let expected = [("abelian1", 4), ("abelian2", 16), ("abelian3", 36), ("sl2", 7), ("sl2+sl2", 14)];
    let mut slowest = Duration::ZERO;
    for e in catalog::catalog() {
        let start = Instant::now();
        let report = verify_theorem_a(&CotangentAnalysis::new(&e.algebra));
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(report.passed(), || format!("{}: {:?}", e.name, report.checks))?;
        ensure(elapsed < Duration::from_secs(60), || format!("{} took {elapsed:?}", e.name))?;
        if let Some((_, d)) = expected.iter().find(|(n, _)| *n == e.name) {
            ensure(report.der_d_dim == *d, || {
                format!("{}: dim der(D) {} != {d}", e.name, report.der_d_dim)
            })?;
        }
        if e.name == "sl2" {
            ensure(report.component_dims == [3, 1, 3, 0], || {
                format!("sl2 components {:?}", report.component_dims)
            })?;
        }
    }
    Ok(format!("10 entries, slowest {slowest:.2?}"))
}

fn theorem_b_grading() -> Outcome {
    for e in catalog::catalog() {
        let report = verify_theorem_b(&CotangentAnalysis::new(&e.algebra));
        ensure(report.passed(), || format!("{}: {:?}", e.name, report.checks))?;
    }
    Ok("all basis pairs, every entry".into())
}

fn theorem_c_counts() -> Outcome {
    for (name, h1) in [("sl2", 1), ("sl2+sl2", 2), ("so3+ab1", 5), ("so3+ab2", 17)] {
        let e = entry(name);
        let r = h1_report(&CotangentAnalysis::new(&e.algebra), Some(&e.meta));
        ensure(r.h1_dd == h1 && r.structural_sum == h1, || {
            format!("{name}: brute force {} structural {} expected {h1}", r.h1_dd, r.structural_sum)
        })?;
        ensure(r.formula_match, || format!("{name}: formula {:?}", r.theorem_c_expected))?;
    }
    Ok("sl2 1, sl2+sl2 2, so3+ab1 5, so3+ab2 17".into())
}

fn additivity() -> Outcome {
    for e in catalog::catalog() {
        let meta = Some(&e.meta).filter(|m| m.p.is_some());
        let r = h1_report(&CotangentAnalysis::new(&e.algebra), meta);
        ensure(r.additive(), || format!("{}: {} != {}", e.name, r.h1_dd, r.structural_sum))?;
        ensure(r.center_consistent, || format!("{}: center of D", e.name))?;
    }
    Ok("every catalog entry".into())
}

fn semisimple_degeneracies() -> Outcome {
    for name in ["sl2", "so3", "sl2+sl2"] {
        let e = entry(name);
        let g = &e.algebra;
        let a = CotangentAnalysis::new(g);
        let r = h1_report(&a, Some(&e.meta));
        ensure((r.dim_psi, r.h1_gg, r.h1_ggstar) == (0, 0, 0), || format!("{name}: {r:?}"))?;
        let coad = g.coad_basis();
        for beta in a.spaces().q().basis_maps() {
            let f0 = semisimple_cocycle_form(g, &beta).map_err(|e| format!("{name}: {e}"))?;
            for (i, c) in coad.iter().enumerate() {
                let residual: Vec<Scalar> = beta
                    .column(i)
                    .iter()
                    .zip((-c).mul_vec(&f0))
                    .map(|(a, b)| a - b)
                    .collect();
                ensure(residual.iter().all(|v| *v == int(0)), || {
                    format!("{name}: residual at e{}", i + 1)
                })?;
            }
        }
    }
    Ok("sl2, so3, sl2+sl2".into())
}

fn orthogonal_transport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for name in ["sl2", "so3"] {
        let g = entry(name).algebra;
        let o = OrthogonalStructure::new(g.clone(), g.killing_form()).map_err(|e| e.to_string())?;
        let a = CotangentAnalysis::new(&g);
        let s = a.spaces();

        let q = s.q().basis_maps();
        let images: Vec<Matrix> = q
            .iter()
            .map(|b| o.transport_cocycle(b))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let image_space = Subspace::span_of_maps(3, 3, &images).map_err(|e| e.to_string())?;
        ensure(q.len() == 3 && s.der().dim() == 3 && image_space == s.der().space, || {
            format!("{name}: P not bijective")
        })?;

        let e_basis = s.xi().e.basis_maps();
        for _ in 0..10 {
            let x1 = random_combination(&mut rng, &e_basis);
            let x2 = random_combination(&mut rng, &e_basis);
            let bracket = x1.commutator(&x2);
            let lhs = o.transport_xi(&bracket).map_err(|e| e.to_string())?;
            let t1 = o.transport_xi(&x1).map_err(|e| e.to_string())?;
            let t2 = o.transport_xi(&x2).map_err(|e| e.to_string())?;
            ensure(lhs == t1.commutator(&t2), || format!("{name}: θ-conjugation not a homomorphism"))?;
            ensure(s.xi().s.contains_map(&lhs).unwrap_or(false), || format!("{name}: image outside S"))?;
            let anti = bracket.transpose() == -&x1.transpose().commutator(&x2.transpose());
            ensure(anti, || format!("{name}: transpose not an anti-homomorphism"))?;
        }

        let square = j_psi_bilinear_square(&o);
        ensure(square.passed() && square.dim_j == 1, || format!("{name}: square {square:?}"))?;
    }
    for e in catalog::catalog() {
        let d = build_cotangent(&e.algebra);
        let o = OrthogonalStructure::of_cotangent(&d).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(o.equivariance_holds(), || format!("{}: residual on D", e.name))?;
    }
    Ok("sl2/so3 Killing, 10 random pairs each; D with μ0 for all entries".into())
}

fn duality_invariance() -> Outcome {
    for e in catalog::catalog() {
        let d = build_cotangent(&e.algebra);
        ensure(d.total().is_invariant(&duality_pairing(&d)), || {
            format!("{}: μ0 not invariant", e.name)
        })?;
        let flipped = semidirect_structure(&e.algebra, CoadjointConvention::Flipped);
        let survives = flipped.preserves_form(&duality_gram(e.algebra.dim()));
        ensure(e.algebra.is_abelian() || !survives, || {
            format!("{}: flipped sign not detected", e.name)
        })?;
    }
    Ok("μ0 invariant; flipped sign rejected on every nonabelian entry".into())
}

fn r_matrix_double() -> Outcome {
    for e in catalog::catalog() {
        let n = e.algebra.dim();
        let rd = double_from_r(&e.algebra, &RMatrix::zero(n)).map_err(|err| err.to_string())?;
        let d = build_cotangent(&e.algebra);
        ensure(rd.structure == *d.total().structure(), || {
            format!("{}: r = 0 double differs from D", e.name)
        })?;
        ensure(rd.theta_r == Matrix::identity(2 * n), || format!("{}: θ_0 not identity", e.name))?;
    }
    let aff = double_from_r(&catalog::aff1(), &RMatrix::wedge(2, 0, 1)).map_err(|e| e.to_string())?;
    ensure(aff.is_cybe && aff.theta_is_homomorphism && aff.theta_r.inverse().is_some(), || {
        "aff1: e1∧e2 not a solution with isomorphic θ_r".into()
    })?;
    let so3 = double_from_r(&catalog::so3(), &RMatrix::wedge(3, 0, 1)).map_err(|e| e.to_string())?;
    ensure(!so3.is_cybe, || "so3: e1∧e2 reported as a solution".into())?;
    Ok("r = 0 for all entries; aff1 and so3 wedges".into())
}

fn omega_closedness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e9a);
    let mut structures: Vec<(String, OrthogonalStructure)> = Vec::new();
    for e in catalog::catalog() {
        if let Some(mu) = e.metric() {
            let o = OrthogonalStructure::new(e.algebra.clone(), mu.clone()).map_err(|x| x.to_string())?;
            structures.push((e.name.clone(), o));
        }
        if e.algebra.dim() <= 5 {
            let o = OrthogonalStructure::of_cotangent(&build_cotangent(&e.algebra)).map_err(|x| x.to_string())?;
            structures.push((format!("D({})", e.name), o));
        }
    }
    let mut instances = 0;
    for (name, o) in &structures {
        let skew = o.skew_equivariant_maps();
        let mut candidates = vec![Matrix::zeros(o.dim(), o.dim())];
        candidates.extend(skew.iter().cloned());
        if !skew.is_empty() {
            candidates.extend((0..5).map(|_| random_combination(&mut rng, &skew)));
        }
        for psi in candidates {
            let c = omega_psi_closedness(o, &psi).map_err(|e| format!("{name}: {e}"))?;
            ensure(c.closed == c.image_in_center, || {
                format!("{name}: closed {} vs center {}", c.closed, c.image_in_center)
            })?;
            ensure(!(c.large_derived && c.closed) || c.psi_zero, || format!("{name}: closed nonzero ψ"))?;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances over {} orthogonal structures", structures.len()))
}

fn report_dims(input: &AlgebraInput) -> Result<(String, String), String> {
    let opts = AnalyzeOptions {
        stable: true,
        ..Default::default()
    };
    let r = analyze(input, &opts).map_err(|e| e.to_string())?;
    Ok((format!("{:?} {:?}", r.spaces, r.cohomology), r.to_json()))
}

fn cli_round_trip() -> Outcome {
    for e in catalog::catalog() {
        let memory: AlgebraInput = (&e).into();
        let text = AlgebraFile::from_entry(&e).to_json();
        let loaded = format::load(&text).map_err(|x| x.to_string())?;
        let again = AlgebraFile::from_algebra(
            loaded.name.as_deref(),
            &loaded.algebra,
            loaded.metric.as_ref(),
            loaded.meta.as_ref(),
        );
        ensure(again.to_json() == text, || format!("{}: export not byte-identical", e.name))?;
        let (dims_memory, _) = report_dims(&memory)?;
        let (dims_file, first) = report_dims(&loaded)?;
        let (_, second) = report_dims(&loaded)?;
        ensure(dims_memory == dims_file, || format!("{}: dims differ after round trip", e.name))?;
        ensure(first == second, || format!("{}: stable JSON differs between runs", e.name))?;
    }
    Ok("every catalog entry".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("theorem A oracle equivalence", theorem_a_oracle),
        ("theorem B grading", theorem_b_grading),
        ("theorem C dimension counts", theorem_c_counts),
        ("H1 additivity", additivity),
        ("semisimple degeneracies", semisimple_degeneracies),
        ("orthogonal transport", orthogonal_transport),
        ("duality pairing invariance", duality_invariance),
        ("r-matrix double", r_matrix_double),
        ("omega_psi closedness", omega_closedness),
        ("CLI determinism and round trip", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
