//! Monte Carlo harnesses: phase-transition grids, bound-vs-empirical
//! comparisons, certificate soundness sweeps and the lemma validation
//! suite. Results are reproducible cell-by-cell: every trial's random
//! streams derive from `(master_seed, cell index, trial index)` so the
//! output is independent of the parallelism degree.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{theorem2_bound, BoundError, BoundParams};
use crate::certificates::{erc_ols_path, theorem1_check, CertificateError};
use crate::ensembles::{
    derive_seed, draw_matrix, draw_noise, draw_signal, projector_concentration_trial,
    ConcentrationResult, EnsembleKind, EnsembleSpec, MagnitudeLaw, NoiseMode, NoiseSpec,
    SignLaw, SignalSpec,
};
use crate::linalg;
use crate::solvers::{
    ols_solve, omp_solve, Algorithm, MeasurementInstance, SolverError, SolverOptions,
    SolverTrace,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("empty grid: axis `{0}` has no values")]
    EmptyGrid(&'static str),
    #[error("per-cell work {work} exceeds budget {budget} (cell n={n}, m={m}, trials={trials})")]
    BudgetExceeded {
        work: u64,
        budget: u64,
        n: usize,
        m: usize,
        trials: usize,
    },
    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SolverChoice {
    Ols,
    Omp,
    Both,
}

impl SolverChoice {
    fn algorithms(&self) -> &'static [Algorithm] {
        match self {
            SolverChoice::Ols => &[Algorithm::Ols],
            SolverChoice::Omp => &[Algorithm::Omp],
            SolverChoice::Both => &[Algorithm::Ols, Algorithm::Omp],
        }
    }
}

pub const DEFAULT_WORK_BUDGET: u64 = 1_000_000_000;

fn default_trials() -> usize {
    200
}
fn default_beta_min() -> f64 {
    1.0
}
fn default_solver() -> SolverChoice {
    SolverChoice::Ols
}
fn default_sign_law() -> SignLaw {
    SignLaw::Random
}
fn default_noise_mode() -> NoiseMode {
    NoiseMode::ExactNorm
}
fn default_magnitude_laws() -> Vec<MagnitudeLaw> {
    vec![MagnitudeLaw::Constant]
}
fn default_budget() -> u64 {
    DEFAULT_WORK_BUDGET
}
fn default_true() -> bool {
    true
}

/// A sweep over `(n, m, k, eps_eta, ensemble, magnitude law)` with a
/// fixed trial count per cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentGrid {
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub k: Vec<usize>,
    pub eps_eta: Vec<f64>,
    pub ensemble: Vec<EnsembleKind>,
    #[serde(default = "default_magnitude_laws")]
    pub magnitude_law: Vec<MagnitudeLaw>,
    #[serde(default = "default_trials")]
    pub trials_per_cell: usize,
    pub master_seed: u64,
    #[serde(default = "default_solver")]
    pub solver: SolverChoice,
    #[serde(default = "default_beta_min")]
    pub beta_min: f64,
    #[serde(default = "default_sign_law")]
    pub sign_law: SignLaw,
    #[serde(default = "default_noise_mode")]
    pub noise_mode: NoiseMode,
    #[serde(default)]
    pub normalize_columns: bool,
    /// Replace each drawn matrix by an orthonormal basis of its column
    /// span (complete-basis sanity cells; requires n >= m).
    #[serde(default)]
    pub orthonormalize: bool,
    #[serde(default)]
    pub evaluate_certificates: bool,
    /// Wall-clock timings are inherently non-reproducible; disable for
    /// byte-for-byte golden outputs.
    #[serde(default = "default_true")]
    pub record_runtime: bool,
    #[serde(default = "default_budget")]
    pub work_budget: u64,
}

impl ExperimentGrid {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        for (name, empty) in [
            ("n", self.n.is_empty()),
            ("m", self.m.is_empty()),
            ("k", self.k.is_empty()),
            ("eps_eta", self.eps_eta.is_empty()),
            ("ensemble", self.ensemble.is_empty()),
            ("magnitude_law", self.magnitude_law.is_empty()),
        ] {
            if empty {
                return Err(ExperimentError::EmptyGrid(name));
            }
        }
        if self.trials_per_cell == 0 {
            return Err(ExperimentError::InvalidExperiment(
                "trials_per_cell must be at least 1".to_string(),
            ));
        }
        if self.beta_min <= 0.0 {
            return Err(ExperimentError::InvalidExperiment(format!(
                "beta_min = {} must be positive",
                self.beta_min
            )));
        }
        for &n in &self.n {
            for &m in &self.m {
                if self.orthonormalize && m > n {
                    return Err(ExperimentError::InvalidExperiment(format!(
                        "orthonormalize requires n >= m (got n={}, m={})",
                        n, m
                    )));
                }
                for &k in &self.k {
                    if k > n || k > m {
                        return Err(ExperimentError::InvalidExperiment(format!(
                            "cell (n={}, m={}, k={}): k must not exceed n or m",
                            n, m, k
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cells in deterministic sweep order (n outermost).
    pub fn base_cells(&self) -> Vec<BaseCell> {
        let mut cells = Vec::new();
        let mut index = 0u64;
        for &n in &self.n {
            for &m in &self.m {
                for &k in &self.k {
                    for &eps_eta in &self.eps_eta {
                        for &ensemble in &self.ensemble {
                            for &magnitude_law in &self.magnitude_law {
                                cells.push(BaseCell {
                                    n,
                                    m,
                                    k,
                                    eps_eta,
                                    ensemble,
                                    magnitude_law,
                                    index,
                                });
                                index += 1;
                            }
                        }
                    }
                }
            }
        }
        cells
    }

    pub fn cell_count(&self) -> usize {
        self.base_cells().len() * self.solver.algorithms().len()
    }

    pub fn trial_total(&self) -> u64 {
        self.base_cells().len() as u64 * self.trials_per_cell as u64
    }

    fn check_budget(&self) -> Result<(), ExperimentError> {
        for cell in self.base_cells() {
            let work = cell.n as u64 * cell.m as u64 * self.trials_per_cell as u64;
            if work > self.work_budget {
                return Err(ExperimentError::BudgetExceeded {
                    work,
                    budget: self.work_budget,
                    n: cell.n,
                    m: cell.m,
                    trials: self.trials_per_cell,
                });
            }
        }
        Ok(())
    }
}

/// One coordinate of the sweep, before the solver axis is applied.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BaseCell {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub eps_eta: f64,
    pub ensemble: EnsembleKind,
    pub magnitude_law: MagnitudeLaw,
    pub index: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellResult {
    pub cell: BaseCell,
    pub solver: Algorithm,
    pub trials: usize,
    pub success_count: usize,
    pub erc_hold_count: Option<usize>,
    pub t1_consistent_hold_count: Option<usize>,
    pub t1_literal_hold_count: Option<usize>,
    pub bound_value: Option<f64>,
    pub mean_runtime_ms: Option<f64>,
}

impl CellResult {
    pub fn success_rate(&self) -> f64 {
        self.success_count as f64 / self.trials as f64
    }

    /// Binomial standard error of the success frequency.
    pub fn sigma_hat(&self) -> f64 {
        let p = self.success_rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Certificate evaluation along the path OLS actually took, restricted
/// to its leading run of true selections.
#[derive(Debug, Clone, Copy)]
pub struct CertificateOutcome {
    pub erc_all_hold: bool,
    pub t1_consistent_all_hold: bool,
    pub t1_literal_all_hold: bool,
    pub ols_success: bool,
}

pub fn evaluate_trial_certificates(
    inst: &MeasurementInstance,
    trace: &SolverTrace,
    eps_eta: f64,
) -> Result<CertificateOutcome, CertificateError> {
    let s_opt = inst
        .true_support()
        .expect("certificate evaluation needs beta_true");
    let ols_success = trace.recovers(inst);
    // longest leading run of true selections; the certificate at the
    // step where OLS first errs is still evaluated (its prefix is true)
    let true_run = trace
        .support
        .iter()
        .take_while(|j| s_opt.contains(j))
        .copied()
        .collect::<Vec<_>>();
    let report = erc_ols_path(&inst.h, &s_opt, &true_run)?;
    let beta = inst.beta_true.as_ref().unwrap();
    let verdicts = theorem1_check(&inst.h, &s_opt, beta, eps_eta, &true_run)?;
    Ok(CertificateOutcome {
        erc_all_hold: report.all_hold(),
        t1_consistent_all_hold: verdicts.iter().all(|v| v.holds_consistent()),
        t1_literal_all_hold: verdicts.iter().all(|v| v.holds_literal()),
        ols_success,
    })
}

struct TrialOutcome {
    success: Vec<bool>, // aligned with grid.solver.algorithms()
    certificates: Option<CertificateOutcome>,
    runtime_ms: f64,
}

fn run_trial(grid: &ExperimentGrid, cell: &BaseCell, trial: u64) -> TrialOutcome {
    let started = std::time::Instant::now();
    let mut h = draw_matrix(&EnsembleSpec {
        kind: cell.ensemble,
        n: cell.n,
        m: cell.m,
        seed: derive_seed(grid.master_seed, "matrix", &[cell.index, trial]),
        normalize_columns: grid.normalize_columns,
    });
    if grid.orthonormalize {
        h = h.qr().q();
    }
    let (beta, support) = draw_signal(&SignalSpec {
        m: cell.m,
        k: cell.k,
        beta_min: grid.beta_min,
        magnitude_law: cell.magnitude_law,
        sign_law: grid.sign_law,
        seed: derive_seed(grid.master_seed, "signal", &[cell.index, trial]),
    });
    let eta = draw_noise(&NoiseSpec {
        n: cell.n,
        eps_eta: cell.eps_eta,
        mode: grid.noise_mode,
        seed: derive_seed(grid.master_seed, "noise", &[cell.index, trial]),
    });
    let inst = MeasurementInstance::from_model(h, beta, eta, cell.k)
        .expect("generated instance is consistent by construction");

    let opts = SolverOptions::default();
    let mut success = Vec::new();
    let mut ols_trace = None;
    for &alg in grid.solver.algorithms() {
        let trace = match alg {
            Algorithm::Ols => ols_solve(&inst, &opts),
            Algorithm::Omp => omp_solve(&inst, &opts),
            Algorithm::Exhaustive => unreachable!(),
        };
        match trace {
            Ok(t) => {
                success.push(t.selected_set() == support.iter().copied().collect());
                if alg == Algorithm::Ols {
                    ols_trace = Some(t);
                }
            }
            // a degenerate instance counts as a failed recovery
            Err(_) => success.push(false),
        }
    }

    let certificates = if grid.evaluate_certificates {
        let trace = match ols_trace {
            Some(t) => Some(t),
            None => ols_solve(&inst, &opts).ok(),
        };
        trace.and_then(|t| evaluate_trial_certificates(&inst, &t, cell.eps_eta).ok())
    } else {
        None
    };

    TrialOutcome {
        success,
        certificates,
        runtime_ms: started.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Runs the full grid and reports per-cell success counts (and, when
/// enabled, certificate hold counts). Deterministic given
/// `master_seed`, at any thread count.
pub fn run_phase_transition(grid: &ExperimentGrid) -> Result<Vec<CellResult>, ExperimentError> {
    grid.validate()?;
    grid.check_budget()?;

    let mut results = Vec::new();
    for cell in grid.base_cells() {
        let outcomes: Vec<TrialOutcome> = (0..grid.trials_per_cell as u64)
            .into_par_iter()
            .map(|trial| run_trial(grid, &cell, trial))
            .collect();

        let mean_runtime_ms = if grid.record_runtime {
            Some(outcomes.iter().map(|o| o.runtime_ms).sum::<f64>() / outcomes.len() as f64)
        } else {
            None
        };
        let (erc, t1c, t1l) = if grid.evaluate_certificates {
            let count = |f: fn(&CertificateOutcome) -> bool| {
                outcomes
                    .iter()
                    .filter(|o| o.certificates.as_ref().is_some_and(f))
                    .count()
            };
            (
                Some(count(|c| c.erc_all_hold)),
                Some(count(|c| c.t1_consistent_all_hold)),
                Some(count(|c| c.t1_literal_all_hold)),
            )
        } else {
            (None, None, None)
        };

        for (slot, &alg) in grid.solver.algorithms().iter().enumerate() {
            results.push(CellResult {
                cell,
                solver: alg,
                trials: grid.trials_per_cell,
                success_count: outcomes.iter().filter(|o| o.success[slot]).count(),
                erc_hold_count: erc,
                t1_consistent_hold_count: t1c,
                t1_literal_hold_count: t1l,
                bound_value: None,
                mean_runtime_ms,
            });
        }
    }
    Ok(results)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundComparisonRow {
    pub result: CellResult,
    /// The theorem lower bound, or the noiseless ERC hold rate for
    /// `eps_eta = 0` cells.
    pub reference: f64,
    pub vacuous: bool,
    pub dominates: bool,
}

/// Per-cell comparison of the empirical success frequency with the
/// theorem's lower bound. Requires the grid to satisfy the theorem's
/// hypotheses (`beta_min >= (1 + delta + t) eps_eta`).
pub fn run_bound_comparison(
    grid: &ExperimentGrid,
    eps: f64,
    delta: f64,
    t: f64,
) -> Result<Vec<BoundComparisonRow>, ExperimentError> {
    grid.validate()?;
    for &eps_eta in &grid.eps_eta {
        if grid.beta_min < (1.0 + delta + t) * eps_eta {
            return Err(ExperimentError::InvalidExperiment(format!(
                "hypothesis violated: beta_min = {} < (1 + delta + t) eps_eta = {}",
                grid.beta_min,
                (1.0 + delta + t) * eps_eta
            )));
        }
    }

    let mut grid = grid.clone();
    if grid.eps_eta.iter().any(|&e| e == 0.0) {
        // noiseless cells are compared against the ERC hold rate
        grid.evaluate_certificates = true;
    }
    let results = run_phase_transition(&grid)?;

    let mut rows = Vec::new();
    for mut result in results {
        let (reference, vacuous) = if result.cell.eps_eta == 0.0 {
            let erc_rate =
                result.erc_hold_count.unwrap_or(0) as f64 / result.trials as f64;
            (erc_rate, false)
        } else {
            let bound = theorem2_bound(&BoundParams {
                n: result.cell.n,
                m: result.cell.m,
                k: result.cell.k,
                eps,
                delta,
                t,
            })?;
            result.bound_value = Some(bound.total_raw);
            (bound.total_raw, bound.vacuous)
        };
        let dominates =
            vacuous || result.success_rate() >= reference - 3.0 * result.sigma_hat();
        rows.push(BoundComparisonRow {
            result,
            reference,
            vacuous,
            dominates,
        });
    }
    Ok(rows)
}

/// Implication tally between the per-iteration certificate verdicts and
/// actual OLS recovery. `consistent_hold_fail` is the soundness
/// violation count and must stay at zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SoundnessRow {
    pub cell: BaseCell,
    pub trials: usize,
    pub consistent_hold_success: usize,
    pub consistent_hold_fail: usize,
    pub consistent_miss_success: usize,
    pub consistent_miss_fail: usize,
    pub literal_hold_fail: usize,
    /// Noiseless-only: trials where every `M_{i+1} < 1` yet OLS failed.
    pub erc_hold_fail: usize,
}

pub fn run_certificate_soundness(
    grid: &ExperimentGrid,
) -> Result<Vec<SoundnessRow>, ExperimentError> {
    let mut grid = grid.clone();
    grid.evaluate_certificates = true;
    grid.validate()?;
    grid.check_budget()?;

    let mut rows = Vec::new();
    for cell in grid.base_cells() {
        let outcomes: Vec<Option<CertificateOutcome>> = (0..grid.trials_per_cell as u64)
            .into_par_iter()
            .map(|trial| run_trial(&grid, &cell, trial).certificates)
            .collect();

        let mut row = SoundnessRow {
            cell,
            trials: grid.trials_per_cell,
            consistent_hold_success: 0,
            consistent_hold_fail: 0,
            consistent_miss_success: 0,
            consistent_miss_fail: 0,
            literal_hold_fail: 0,
            erc_hold_fail: 0,
        };
        for c in outcomes.into_iter().flatten() {
            match (c.t1_consistent_all_hold, c.ols_success) {
                (true, true) => row.consistent_hold_success += 1,
                (true, false) => row.consistent_hold_fail += 1,
                (false, true) => row.consistent_miss_success += 1,
                (false, false) => row.consistent_miss_fail += 1,
            }
            if c.t1_literal_all_hold && !c.ols_success {
                row.literal_hold_fail += 1;
            }
            if cell.eps_eta == 0.0 && c.erc_all_hold && !c.ols_success {
                row.erc_hold_fail += 1;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaReport {
    pub interlacing_trials: usize,
    pub interlacing_min_slack: f64,
    pub interlacing_pass: bool,
    pub decomposition_runs: usize,
    pub decomposition_max_rel_err: f64,
    pub decomposition_pass: bool,
    pub concentration: ConcentrationResult,
    pub concentration_mean_pass: bool,
    pub concentration_tail_pass: bool,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.interlacing_pass
            && self.decomposition_pass
            && self.concentration_mean_pass
            && self.concentration_tail_pass
    }
}

/// Executes the three lemma property suites (singular-value interlacing,
/// noise/residual decomposition, projector concentration) at the given
/// sizes and reports measured margins.
pub fn run_lemma_suite(seed: u64, n: usize, m: usize, k: usize) -> LemmaReport {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    // Interlacing: sigma extremes of a block vs the concatenation
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "lemma-interlacing", &[]));
    let interlacing_trials = 200;
    let mut min_slack = f64::INFINITY;
    for _ in 0..interlacing_trials {
        let cols = 2 * k.max(1);
        let c = crate::linalg::DenseMatrix::from_fn(n, cols, |_, _| {
            let x: f64 = StandardNormal.sample(&mut rng);
            x / (n as f64).sqrt()
        });
        let sc = linalg::spectral_extremes(&c).unwrap();
        for half in [c.columns(0, cols / 2).into_owned(), c.columns(cols / 2, cols - cols / 2).into_owned()] {
            let sh = linalg::spectral_extremes(&half).unwrap();
            min_slack = min_slack
                .min(sh.sigma_min - sc.sigma_min)
                .min(sc.sigma_max - sh.sigma_max);
        }
    }
    let interlacing_pass = min_slack >= -1e-10;

    // Decomposition: Pythagorean split along traced noisy OLS runs
    let decomposition_runs = 100;
    let mut max_rel_err: f64 = 0.0;
    for run in 0..decomposition_runs {
        let grid_seed = derive_seed(seed, "lemma-decomposition", &[run]);
        let h = draw_matrix(&EnsembleSpec {
            kind: EnsembleKind::Gaussian,
            n,
            m,
            seed: derive_seed(grid_seed, "matrix", &[]),
            normalize_columns: false,
        });
        let (beta, support) = draw_signal(&SignalSpec {
            m,
            k,
            beta_min: 1.0,
            magnitude_law: MagnitudeLaw::UniformAboveMin,
            sign_law: SignLaw::Random,
            seed: derive_seed(grid_seed, "signal", &[]),
        });
        let eta = draw_noise(&NoiseSpec {
            n,
            eps_eta: 0.2,
            mode: NoiseMode::ExactNorm,
            seed: derive_seed(grid_seed, "noise", &[]),
        });
        let inst = MeasurementInstance::from_model(h, beta, eta, k).unwrap();
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
            let d = match crate::solvers::residual_decompose(&inst, &prefix) {
                Ok(d) => d,
                Err(_) => break,
            };
            let lhs = it.residual_norm * it.residual_norm;
            let rhs = d.eta_perp.norm_squared() + d.signal_part.norm_squared();
            let rel = (lhs - rhs).abs() / lhs.max(1e-300);
            max_rel_err = max_rel_err.max(rel);
        }
    }
    let decomposition_pass = max_rel_err <= 1e-8;

    // Concentration at eps = 0.5
    let concentration = projector_concentration_trial(
        n,
        k,
        EnsembleKind::Gaussian,
        5000,
        0.5,
        derive_seed(seed, "lemma-concentration", &[]),
    );
    let expected = k as f64 / n as f64;
    let concentration_mean_pass =
        (concentration.empirical_mean - expected).abs() <= 0.05 * expected;
    let p = concentration.violation_rate;
    let sigma_hat = (p.max(1e-9) * (1.0 - p) / 5000.0).sqrt();
    let concentration_tail_pass =
        concentration.violation_rate <= concentration.tail_bound + 3.0 * sigma_hat;

    LemmaReport {
        interlacing_trials,
        interlacing_min_slack: min_slack,
        interlacing_pass,
        decomposition_runs: decomposition_runs as usize,
        decomposition_max_rel_err: max_rel_err,
        decomposition_pass,
        concentration,
        concentration_mean_pass,
        concentration_tail_pass,
    }
}

/// Round-trip-safe float formatting (17 significant digits).
pub fn format_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

/// One CSV row per cell, in sweep order. Optional columns are left empty.
pub fn results_to_csv(results: &[CellResult]) -> String {
    let mut out = String::from(
        "n,m,k,eps_eta,ensemble,magnitude_law,solver,success_count,trials,bound_value,erc_rate,t1_consistent_rate,t1_literal_rate,mean_runtime_ms\n",
    );
    for r in results {
        let rate = |c: Option<usize>| {
            c.map(|c| format_f64(c as f64 / r.trials as f64))
                .unwrap_or_default()
        };
        out.push_str(&format!(
            "{},{},{},{},{:?},{:?},{:?},{},{},{},{},{},{},{}\n",
            r.cell.n,
            r.cell.m,
            r.cell.k,
            format_f64(r.cell.eps_eta),
            r.cell.ensemble,
            r.cell.magnitude_law,
            r.solver,
            r.success_count,
            r.trials,
            r.bound_value.map(format_f64).unwrap_or_default(),
            rate(r.erc_hold_count),
            rate(r.t1_consistent_hold_count),
            rate(r.t1_literal_hold_count),
            r.mean_runtime_ms.map(format_f64).unwrap_or_default(),
        ));
    }
    out
}

/// FNV-1a hash of the canonical JSON encoding, for manifest stamping.
pub fn config_hash(grid: &ExperimentGrid) -> String {
    let json = serde_json::to_string(grid).expect("grid serializes");
    let mut h: u64 = 0xcbf29ce484222325;
    for b in json.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{:016x}", h)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub grid: ExperimentGrid,
    pub master_seed: u64,
    pub config_hash: String,
    pub code_version: String,
    pub cell_count: usize,
    pub trial_total: u64,
}

impl Manifest {
    pub fn new(grid: &ExperimentGrid) -> Self {
        Manifest {
            master_seed: grid.master_seed,
            config_hash: config_hash(grid),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            cell_count: grid.cell_count(),
            trial_total: grid.trial_total(),
            grid: grid.clone(),
        }
    }
}
