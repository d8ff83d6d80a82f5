//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line with the measured margin.

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;

use olsrec_core::ensembles::{
    derive_seed, draw_matrix, draw_noise, draw_signal, projector_concentration_trial,
    sigma_concentration_trial, EnsembleKind, EnsembleSpec, MagnitudeLaw, NoiseMode, NoiseSpec,
    SignLaw, SignalSpec,
};
use olsrec_core::experiments::{
    run_bound_comparison, run_certificate_soundness, run_phase_transition, ExperimentGrid,
    SolverChoice,
};
use olsrec_core::linalg::{
    columns, complement_projector, default_downdate_tol, projector_downdate, Projector,
};
use olsrec_core::solvers::{ols_solve, residual_decompose};
use olsrec_core::{Algorithm, DenseVector, MeasurementInstance, SolverOptions};

const SEED: u64 = 0x0a11ce;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {}: {} ({})",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "criterion {} failed: {}", criterion, detail);
}

fn gaussian_instance(n: usize, m: usize, k: usize, eps_eta: f64, trial: u64) -> MeasurementInstance {
    let h = draw_matrix(&EnsembleSpec {
        kind: EnsembleKind::Gaussian,
        n,
        m,
        seed: derive_seed(SEED, "acc-matrix", &[trial]),
        normalize_columns: false,
    });
    let (beta, _) = draw_signal(&SignalSpec {
        m,
        k,
        beta_min: 1.0,
        magnitude_law: MagnitudeLaw::Constant,
        sign_law: SignLaw::Random,
        seed: derive_seed(SEED, "acc-signal", &[trial]),
    });
    let eta = if eps_eta > 0.0 {
        draw_noise(&NoiseSpec {
            n,
            eps_eta,
            mode: NoiseMode::ExactNorm,
            seed: derive_seed(SEED, "acc-noise", &[trial]),
        })
    } else {
        DenseVector::zeros(n)
    };
    MeasurementInstance::from_model(h, beta, eta, k).unwrap()
}

fn grid(n: Vec<usize>, m: Vec<usize>, k: Vec<usize>, eps_eta: Vec<f64>) -> ExperimentGrid {
    ExperimentGrid {
        n,
        m,
        k,
        eps_eta,
        ensemble: vec![EnsembleKind::Gaussian],
        magnitude_law: vec![MagnitudeLaw::Constant],
        trials_per_cell: 200,
        master_seed: SEED,
        solver: SolverChoice::Ols,
        beta_min: 1.0,
        sign_law: SignLaw::Random,
        noise_mode: NoiseMode::ExactNorm,
        normalize_columns: false,
        orthonormalize: false,
        evaluate_certificates: false,
        record_runtime: false,
        work_budget: olsrec_core::experiments::DEFAULT_WORK_BUDGET,
    }
}

/// Each OLS pick must equal the brute-force residual minimizer over all
/// remaining candidates.
#[test]
fn criterion_1_selection_rule_equivalence() {
    let mut mismatches = 0usize;
    for trial in 0..100u64 {
        let inst = gaussian_instance(20, 40, 3, 0.0, trial);
        let trace = ols_solve(&inst, &SolverOptions::default()).unwrap();
        let mut prefix: Vec<usize> = Vec::new();
        for it in &trace.iterations {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..inst.h.ncols() {
                if prefix.contains(&j) {
                    continue;
                }
                let mut s = prefix.clone();
                s.push(j);
                let p = match complement_projector(&columns(&inst.h, &s)) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let rnorm = p.apply(&inst.y).norm();
                if best.map_or(true, |(_, b)| rnorm < b) {
                    best = Some((j, rnorm));
                }
            }
            if best.map(|(j, _)| j) != Some(it.selected_index) {
                mismatches += 1;
            }
            prefix.push(it.selected_index);
        }
    }
    verdict(
        "1 (selection-rule equivalence)",
        mismatches == 0,
        &format!("{} mismatches over 100 instances", mismatches),
    );
}

/// Iterated rank-one projector downdates must agree with the batch
/// complement projector to 1e-8 Frobenius.
#[test]
fn criterion_2_projector_recursion() {
    let mut max_diff: f64 = 0.0;
    for trial in 0..200u64 {
        let n = 8 + (trial as usize * 7) % 57; // 8..=64
        let len = 1 + (trial as usize) % 8;
        let h = draw_matrix(&EnsembleSpec {
            kind: EnsembleKind::Gaussian,
            n,
            m: len,
            seed: derive_seed(SEED, "acc-path", &[trial]),
            normalize_columns: false,
        });
        let mut p = Projector::identity(n);
        for i in 0..len {
            let a = DenseVector::from_column_slice(h.column(i).as_slice());
            p = projector_downdate(&p, &a, default_downdate_tol(&a)).unwrap();
            let batch = complement_projector(&h.columns(0, i + 1).into_owned()).unwrap();
            let diff = (p.matrix() - batch.matrix()).norm();
            max_diff = max_diff.max(diff);
        }
    }
    verdict(
        "2 (projector recursion)",
        max_diff <= 1e-8,
        &format!("max Frobenius difference {:.3e} over 200 paths", max_diff),
    );
}

/// Noiseless: a full certificate along the OLS path must imply exact
/// recovery; zero counterexamples allowed.
#[test]
fn criterion_3_noiseless_certificate_soundness() {
    let mut g = grid(vec![50], vec![100], vec![2, 3, 4], vec![0.0]);
    g.trials_per_cell = 350;
    let rows = run_certificate_soundness(&g).unwrap();
    let trials: usize = rows.iter().map(|r| r.trials).sum();
    let violations: usize = rows.iter().map(|r| r.erc_hold_fail).sum();
    assert!(trials >= 1000);
    verdict(
        "3 (noiseless certificate soundness)",
        violations == 0,
        &format!("{} counterexamples over {} trials", violations, trials),
    );
}

/// Noisy, consistent variant: verdict-holds-everywhere must imply
/// recovery; the literal variant's violation count is reported only.
#[test]
fn criterion_4_noisy_certificate_soundness() {
    let mut g = grid(vec![25], vec![50], vec![2], vec![0.05]);
    g.trials_per_cell = 10_000;
    g.normalize_columns = true;
    let rows = run_certificate_soundness(&g).unwrap();
    let trials: usize = rows.iter().map(|r| r.trials).sum();
    let violations: usize = rows.iter().map(|r| r.consistent_hold_fail).sum();
    let literal: usize = rows.iter().map(|r| r.literal_hold_fail).sum();
    assert!(trials >= 10_000);
    verdict(
        "4 (noisy certificate soundness, consistent variant)",
        violations == 0,
        &format!(
            "{} counterexamples over {} trials; literal-variant violations: {}",
            violations, trials, literal
        ),
    );
}

/// Pythagorean residual split along traced noisy runs, relative error
/// at most 1e-8 on every iteration.
#[test]
fn criterion_5_residual_decomposition_identity() {
    let mut max_rel: f64 = 0.0;
    let mut iterations = 0usize;
    for trial in 0..500u64 {
        let inst = gaussian_instance(30, 60, 3, 0.2, 1_000 + trial);
        let support: BTreeSet<usize> = inst.true_support().unwrap().into_iter().collect();
        let trace = match ols_solve(&inst, &SolverOptions::default()) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let mut prefix = Vec::new();
        for it in &trace.iterations {
            if !support.contains(&it.selected_index) {
                break;
            }
            prefix.push(it.selected_index);
            let d = residual_decompose(&inst, &prefix).unwrap();
            let lhs = it.residual_norm * it.residual_norm;
            let rhs = d.eta_perp.norm_squared() + d.signal_part.norm_squared();
            max_rel = max_rel.max((lhs - rhs).abs() / lhs.max(1e-300));
            iterations += 1;
        }
    }
    verdict(
        "5 (residual decomposition identity)",
        max_rel <= 1e-8 && iterations > 0,
        &format!(
            "max relative error {:.3e} over {} traced iterations",
            max_rel, iterations
        ),
    );
}

/// Projected-norm concentration: mean within 5% of k/n and tail
/// violations within the closed-form budget, for both ensembles.
#[test]
fn criterion_6_projector_concentration() {
    let (n, k, trials, eps) = (100usize, 10usize, 10_000usize, 0.5);
    let expected = k as f64 / n as f64;
    let mut detail = String::new();
    let mut pass = true;
    for kind in [EnsembleKind::Gaussian, EnsembleKind::Bernoulli] {
        let r = projector_concentration_trial(
            n,
            k,
            kind,
            trials,
            eps,
            derive_seed(SEED, "acc-concentration", &[kind as u64]),
        );
        let mean_ok = (r.empirical_mean - expected).abs() <= 0.05 * expected;
        let p = r.violation_rate;
        let sigma_hat = (p.max(1e-9) * (1.0 - p) / trials as f64).sqrt();
        let tail_ok = r.violation_rate <= r.tail_bound + 3.0 * sigma_hat;
        pass &= mean_ok && tail_ok;
        detail.push_str(&format!(
            "{:?}: mean {:.4} (expect {:.4}), tail {:.4} vs bound {:.4}; ",
            kind, r.empirical_mean, expected, r.violation_rate, r.tail_bound
        ));
    }
    verdict("6 (projected-norm concentration)", pass, detail.trim_end());
}

/// sigma_min concentration of random submatrices against the
/// closed-form complement, binding only when that complement is a
/// probability.
#[test]
fn criterion_7_singular_value_concentration() {
    let r = sigma_concentration_trial(
        200,
        5,
        0.5,
        EnsembleKind::Gaussian,
        10_000,
        derive_seed(SEED, "acc-sigma", &[]),
    );
    let pass = r.bound_complement > 1.0 || r.violation_rate <= r.bound_complement;
    verdict(
        "7 (singular-value concentration)",
        pass,
        &format!(
            "violation rate {:.4}, bound complement {:.4e}",
            r.violation_rate, r.bound_complement
        ),
    );
}

/// Phase transition at m=128, k=4: near-certain recovery at n =
/// ceil(4 k ln m) = 78 and failure-prone at n = k + 2 = 6.
#[test]
fn criterion_8_sample_complexity_trend() {
    let g = grid(vec![6, 78], vec![128], vec![4], vec![0.0]);
    let results = run_phase_transition(&g).unwrap();
    let rate = |n: usize| {
        results
            .iter()
            .find(|r| r.cell.n == n && r.solver == Algorithm::Ols)
            .map(|r| r.success_rate())
            .unwrap()
    };
    let (low, high) = (rate(6), rate(78));
    verdict(
        "8 (sample-complexity trend)",
        high >= 0.95 && low <= 0.5,
        &format!("success {:.3} at n=78, {:.3} at n=6", high, low),
    );
}

/// Empirical success frequency must dominate every non-vacuous
/// probability bound above 0.2, within 3 binomial sigma.
#[test]
fn criterion_9_bound_dominance() {
    let mut g = grid(vec![600, 800], vec![4], vec![1, 2], vec![0.1]);
    g.trials_per_cell = 200;
    let rows = run_bound_comparison(&g, 0.3, 0.5, 2.0).unwrap();
    let binding: Vec<_> = rows
        .iter()
        .filter(|r| !r.vacuous && r.reference > 0.2)
        .collect();
    assert!(!binding.is_empty(), "no cell exercises the bound");
    let violations = binding.iter().filter(|r| !r.dominates).count();
    verdict(
        "9 (probability-bound dominance)",
        violations == 0,
        &format!(
            "{} violations over {} binding cells (max bound {:.4})",
            violations,
            binding.len(),
            binding.iter().map(|r| r.reference).fold(0.0, f64::max)
        ),
    );
}

/// The bundled quickstart grid must reproduce the golden CSV
/// byte-for-byte at any thread count.
#[test]
fn criterion_10_quickstart_determinism() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let golden = fs::read(format!("{}/configs/quickstart_golden.csv", root)).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for threads in ["1", "4"] {
        let tmp = tempfile::TempDir::new().unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_olsrec"))
            .args([
                "experiment",
                "--config",
                &format!("{}/configs/quickstart.json", root),
                "--out-dir",
                tmp.path().to_str().unwrap(),
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{:?}", out);
        let produced = fs::read(tmp.path().join("results.csv")).unwrap();
        let same = produced == golden;
        pass &= same;
        detail.push_str(&format!(
            "threads={}: {}; ",
            threads,
            if same { "identical" } else { "differs" }
        ));
    }
    verdict("10 (quickstart determinism)", pass, detail.trim_end());
}
