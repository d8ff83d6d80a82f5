//! `olsrec`: sparse-recovery solvers, certificates, probability bounds,
//! and Monte Carlo experiments from the command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 numerical or solver
//! failure.

mod io;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use olsrec_core::certificates::{
    erc_ols_path, remark1_comparison, theorem1_check, ErcReport, VerdictOutcome,
};
use olsrec_core::bounds::{
    sample_complexity, snr_requirement, theorem2_bound, BoundParams, BoundResult,
    ComplexityParams,
};
use olsrec_core::experiments::{
    format_f64, results_to_csv, run_bound_comparison, run_certificate_soundness,
    run_lemma_suite, run_phase_transition, BoundComparisonRow, ExperimentGrid, Manifest,
    SoundnessRow,
};
use olsrec_core::solvers::{exhaustive_l0, ols_solve, omp_solve, SolverTrace};
use olsrec_core::{MeasurementInstance, SolverOptions};

const SEED_ENV: &str = "OLSREC_SEED";

#[derive(Parser)]
#[command(name = "olsrec", version, about = "Greedy sparse recovery toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Ols,
    Omp,
    Exhaustive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentMode {
    Phase,
    Bound,
    Soundness,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver on a measurement instance read from files.
    Solve {
        /// Matrix file: header `n m`, then n rows of m decimals.
        #[arg(long)]
        matrix: PathBuf,
        /// Measurement vector file (header `n 1`).
        #[arg(long)]
        measurements: PathBuf,
        /// Sparsity level (number of iterations).
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "ols")]
        algorithm: AlgorithmArg,
        /// Iteration cap (defaults to k).
        #[arg(long)]
        max_iters: Option<usize>,
        /// Stop once the residual norm drops to this value.
        #[arg(long)]
        residual_stop: Option<f64>,
        /// Select on unit-norm columns.
        #[arg(long)]
        normalize_columns: bool,
        /// Write the trace JSON here; without it the JSON goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate exact-recovery certificates for a given support.
    Erc {
        #[arg(long)]
        matrix: PathBuf,
        /// Candidate support, 1-based comma-separated indices.
        #[arg(long, value_delimiter = ',')]
        support: Vec<usize>,
        /// Selection path (1-based, nested in the support) conditioning
        /// the per-iteration certificates.
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<usize>>,
        /// Take the path from a trace JSON written by `solve` instead.
        #[arg(long, conflicts_with = "path")]
        trace: Option<PathBuf>,
        /// True coefficient vector file, enables the beta_min verdicts.
        #[arg(long, requires = "eps_eta")]
        beta: Option<PathBuf>,
        /// Noise norm budget for the beta_min verdicts.
        #[arg(long)]
        eps_eta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the recovery-probability lower bound and related formulas.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        t: f64,
        /// Failure budget for the sample-complexity formula.
        #[arg(long, requires_all = ["c1", "c2", "c3"])]
        gamma: Option<f64>,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        #[arg(long)]
        c3: Option<f64>,
        /// Fit an effective C1 from a phase-transition results CSV.
        #[arg(long)]
        fit_csv: Option<PathBuf>,
        /// Success frequency defining the transition point for the fit.
        #[arg(long, default_value = "0.95")]
        fit_target: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo experiment described by a JSON grid config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value = "phase")]
        mode: ExperimentMode,
        /// Theorem parameters, required for `--mode bound`.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        /// Worker threads (default: number of cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Print the cell count and trial total, then exit.
        #[arg(long)]
        dry_run: bool,
    },
    /// Execute the lemma validation suites and report margins.
    Lemmas {
        /// Defaults to the OLSREC_SEED environment variable, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "64")]
        n: usize,
        #[arg(long, default_value = "128")]
        m: usize,
        #[arg(short, default_value = "8")]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures mapped onto the exit-code contract.
enum CliError {
    /// Exit 1: bad arguments, unreadable or malformed files, invalid configs.
    Usage(String),
    /// Exit 2: solver or numerical failure on well-formed input.
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<io::ParseError> for CliError {
    fn from(e: io::ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn numerical<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numerical(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve {
            matrix,
            measurements,
            k,
            algorithm,
            max_iters,
            residual_stop,
            normalize_columns,
            out,
        } => cmd_solve(
            &matrix,
            &measurements,
            k,
            algorithm,
            max_iters,
            residual_stop,
            normalize_columns,
            out.as_deref(),
        ),
        Command::Erc {
            matrix,
            support,
            path,
            trace,
            beta,
            eps_eta,
            out,
        } => cmd_erc(
            &matrix,
            &support,
            path.as_deref(),
            trace.as_deref(),
            beta.as_deref(),
            eps_eta,
            out.as_deref(),
        ),
        Command::Bound {
            n,
            m,
            k,
            eps,
            delta,
            t,
            gamma,
            c1,
            c2,
            c3,
            fit_csv,
            fit_target,
            out,
        } => cmd_bound(
            BoundParams {
                n,
                m,
                k,
                eps,
                delta,
                t,
            },
            gamma.map(|gamma| ComplexityParams {
                gamma,
                c1: c1.unwrap(),
                c2: c2.unwrap(),
                c3: c3.unwrap(),
            }),
            fit_csv.as_deref(),
            fit_target,
            out.as_deref(),
        ),
        Command::Experiment {
            config,
            out_dir,
            mode,
            eps,
            delta,
            t,
            threads,
            dry_run,
        } => cmd_experiment(&config, &out_dir, mode, eps, delta, t, threads, dry_run),
        Command::Lemmas { seed, n, m, k, out } => cmd_lemmas(seed, n, m, k, out.as_deref()),
    }
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).map_err(usage)?;
    match out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e))),
        None => {
            println!("{}", json);
            Ok(())
        }
    }
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

/// Converts 1-based command-line indices to internal 0-based form.
fn to_zero_based(indices: &[usize], m: usize, what: &str) -> Result<Vec<usize>, CliError> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > m {
                Err(CliError::Usage(format!(
                    "{} index {} out of range 1..={}",
                    what, i, m
                )))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    matrix: &Path,
    measurements: &Path,
    k: usize,
    algorithm: AlgorithmArg,
    max_iters: Option<usize>,
    residual_stop: Option<f64>,
    normalize_columns: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let h = io::read_matrix(matrix)?;
    let y = io::read_vector(measurements)?;
    if y.len() != h.nrows() {
        return Err(CliError::Usage(format!(
            "dimension mismatch: matrix is {}x{} but measurements have length {}",
            h.nrows(),
            h.ncols(),
            y.len()
        )));
    }
    let inst = MeasurementInstance::new(h, y, None, None, k).map_err(usage)?;
    let opts = SolverOptions {
        max_iters,
        residual_stop,
        normalize_columns,
        ..SolverOptions::default()
    };
    let trace = match algorithm {
        AlgorithmArg::Ols => ols_solve(&inst, &opts),
        AlgorithmArg::Omp => omp_solve(&inst, &opts),
        AlgorithmArg::Exhaustive => exhaustive_l0(&inst),
    }
    .map_err(numerical)?;

    if out.is_some() {
        print_trace_summary(&trace);
    }
    write_json(&trace, out)
}

fn print_trace_summary(trace: &SolverTrace) {
    println!(
        "algorithm: {}",
        serde_json::to_value(trace.algorithm)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    );
    println!("selected indices (1-based): {:?}", one_based(&trace.support));
    let coeffs: Vec<String> = trace.coefficients.iter().map(|&c| format_f64(c)).collect();
    println!("coefficients: [{}]", coeffs.join(", "));
    println!("final residual norm: {}", format_f64(trace.final_residual_norm));
}

#[derive(Serialize)]
struct ErcOutput {
    index_base: u8,
    report: ErcReport,
    remark1_prior_more_restrictive: Option<bool>,
    theorem1: Option<Vec<VerdictOutcome>>,
}

fn cmd_erc(
    matrix: &Path,
    support: &[usize],
    path: Option<&[usize]>,
    trace: Option<&Path>,
    beta: Option<&Path>,
    eps_eta: Option<f64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let h = io::read_matrix(matrix)?;
    let m = h.ncols();
    if support.is_empty() {
        return Err(CliError::Usage("support must be non-empty".to_string()));
    }
    let s_opt = to_zero_based(support, m, "support")?;

    let path0: Vec<usize> = if let Some(p) = path {
        to_zero_based(p, m, "path")?
    } else if let Some(trace_path) = trace {
        let text = fs::read_to_string(trace_path)
            .map_err(|e| usage(format!("cannot read {}: {}", trace_path.display(), e)))?;
        let trace: SolverTrace = serde_json::from_str(&text)
            .map_err(|e| usage(format!("{}: {}", trace_path.display(), e)))?;
        // longest leading run of trace selections inside the support
        trace
            .support
            .iter()
            .copied()
            .take_while(|j| s_opt.contains(j))
            .collect()
    } else {
        Vec::new()
    };

    let report = erc_ols_path(&h, &s_opt, &path0).map_err(numerical)?;
    let remark1 = remark1_comparison(&h, &s_opt).ok();

    let theorem1 = match (beta, eps_eta) {
        (Some(beta_path), Some(eps)) => {
            let beta = io::read_vector(beta_path)?;
            if beta.len() != m {
                return Err(CliError::Usage(format!(
                    "beta has length {} but the matrix has {} columns",
                    beta.len(),
                    m
                )));
            }
            Some(theorem1_check(&h, &s_opt, &beta, eps, &path0).map_err(numerical)?)
        }
        _ => None,
    };

    println!("M_OMP: {}", format_f64(report.m_omp));
    for (i, (mv, holds)) in report
        .m_ols_per_iter
        .iter()
        .zip(&report.erc_holds)
        .enumerate()
    {
        println!(
            "M_{}: {} ({})",
            i + 1,
            format_f64(*mv),
            if *holds { "holds" } else { "fails" }
        );
    }
    println!(
        "certificate along path: {}",
        if report.all_hold() { "holds" } else { "fails" }
    );
    if let Some(t1) = &theorem1 {
        let all = t1.iter().all(|v| v.holds_consistent());
        println!(
            "beta_min condition (consistent variant): {}",
            if all { "holds" } else { "fails" }
        );
    }

    write_json(
        &ErcOutput {
            index_base: 0,
            report,
            remark1_prior_more_restrictive: remark1,
            theorem1,
        },
        out,
    )
}

#[derive(Serialize)]
struct FitGroup {
    m: usize,
    k: usize,
    transition_n: usize,
    c1_effective: f64,
}

#[derive(Serialize)]
struct FitOutput {
    gamma: f64,
    target: f64,
    groups: Vec<FitGroup>,
    /// Smallest per-group estimate: the conservative choice.
    c1_effective: f64,
}

#[derive(Serialize)]
struct BoundOutput {
    params: BoundParams,
    result: BoundResult,
    snr_requirement: f64,
    complexity: Option<ComplexityParams>,
    sample_complexity: Option<usize>,
    fit: Option<FitOutput>,
}

fn cmd_bound(
    params: BoundParams,
    complexity: Option<ComplexityParams>,
    fit_csv: Option<&Path>,
    fit_target: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let result = theorem2_bound(&params).map_err(usage)?;
    let sample = complexity
        .as_ref()
        .map(|c| sample_complexity(params.k, params.m, c))
        .transpose()
        .map_err(usage)?;
    let gamma = complexity.as_ref().map(|c| c.gamma).unwrap_or(0.1);
    let fit = fit_csv
        .map(|p| fit_c1_from_csv(p, gamma, fit_target))
        .transpose()?;

    println!("p1: {}", format_f64(result.p1));
    println!("p2: {}", format_f64(result.p2));
    println!("p3 factor: {}", format_f64(result.p3_factor));
    println!(
        "total: {}{}",
        format_f64(result.total_raw),
        if result.vacuous { " (vacuous)" } else { "" }
    );
    println!(
        "SNR requirement k(1+delta+t)^2: {}",
        format_f64(snr_requirement(params.k, params.delta, params.t))
    );
    if let Some(n) = sample {
        println!("sample complexity: n >= {}", n);
    }
    if let Some(f) = &fit {
        println!("fitted effective C1: {}", format_f64(f.c1_effective));
    }

    write_json(
        &BoundOutput {
            snr_requirement: snr_requirement(params.k, params.delta, params.t),
            params,
            result,
            complexity,
            sample_complexity: sample,
            fit,
        },
        out,
    )
}

/// Calibrates an effective C1 from noiseless phase-transition rows: for
/// each (m, k) group the smallest n whose success frequency reaches the
/// target gives `C1 = 2 k ln(m / gamma) / n`.
fn fit_c1_from_csv(path: &Path, gamma: f64, target: f64) -> Result<FitOutput, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| usage(format!("{}: empty CSV", path.display())))?;
    let cols: Vec<&str> = header.split(',').collect();
    let col = |name: &str| -> Result<usize, CliError> {
        cols.iter()
            .position(|c| *c == name)
            .ok_or_else(|| usage(format!("{}: missing CSV column {:?}", path.display(), name)))
    };
    let (ci_n, ci_m, ci_k) = (col("n")?, col("m")?, col("k")?);
    let (ci_eps, ci_succ, ci_trials) = (col("eps_eta")?, col("success_count")?, col("trials")?);

    let mut best: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (line_no, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        let field = |i: usize| -> Result<&str, CliError> {
            f.get(i).copied().ok_or_else(|| {
                usage(format!("{}:{}: short CSV row", path.display(), line_no + 2))
            })
        };
        fn parsed<T: std::str::FromStr>(
            v: &str,
            path: &Path,
            line_no: usize,
        ) -> Result<T, CliError> {
            v.parse().map_err(|_| {
                usage(format!(
                    "{}:{}: invalid value {:?}",
                    path.display(),
                    line_no + 2,
                    v
                ))
            })
        }
        let n: usize = parsed(field(ci_n)?, path, line_no)?;
        let m: usize = parsed(field(ci_m)?, path, line_no)?;
        let k: usize = parsed(field(ci_k)?, path, line_no)?;
        let eps: f64 = parsed(field(ci_eps)?, path, line_no)?;
        let succ: f64 = parsed(field(ci_succ)?, path, line_no)?;
        let trials: f64 = parsed(field(ci_trials)?, path, line_no)?;
        if eps != 0.0 || trials == 0.0 || succ / trials < target {
            continue;
        }
        best.entry((m, k))
            .and_modify(|n0| *n0 = (*n0).min(n))
            .or_insert(n);
    }
    if best.is_empty() {
        return Err(usage(format!(
            "{}: no noiseless cell reaches success frequency {}",
            path.display(),
            target
        )));
    }
    let groups: Vec<FitGroup> = best
        .into_iter()
        .map(|((m, k), n)| FitGroup {
            m,
            k,
            transition_n: n,
            c1_effective: 2.0 * k as f64 * (m as f64 / gamma).ln() / n as f64,
        })
        .collect();
    let c1_effective = groups
        .iter()
        .map(|g| g.c1_effective)
        .fold(f64::INFINITY, f64::min);
    Ok(FitOutput {
        gamma,
        target,
        groups,
        c1_effective,
    })
}

fn load_grid(config: &Path) -> Result<ExperimentGrid, CliError> {
    let text = fs::read_to_string(config)
        .map_err(|e| usage(format!("cannot read {}: {}", config.display(), e)))?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {}", config.display(), e)))?;
    // default seed from the environment when the config omits it
    if let Some(obj) = value.as_object_mut() {
        if !obj.contains_key("master_seed") {
            if let Ok(seed) = std::env::var(SEED_ENV) {
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| usage(format!("invalid {}: {:?}", SEED_ENV, seed)))?;
                obj.insert("master_seed".to_string(), seed.into());
            }
        }
    }
    let patched = value.to_string();
    let de = &mut serde_json::Deserializer::from_str(&patched);
    let grid: ExperimentGrid = serde_path_to_error::deserialize(de).map_err(|e| {
        usage(format!(
            "{}: at /{}: {}",
            config.display(),
            e.path().to_string().replace('.', "/"),
            e.inner()
        ))
    })?;
    grid.validate().map_err(usage)?;
    Ok(grid)
}

fn bound_rows_to_csv(rows: &[BoundComparisonRow]) -> String {
    let mut out = String::from(
        "n,m,k,eps_eta,ensemble,magnitude_law,solver,success_count,trials,reference,vacuous,dominates\n",
    );
    for row in rows {
        let r = &row.result;
        out.push_str(&format!(
            "{},{},{},{},{:?},{:?},{:?},{},{},{},{},{}\n",
            r.cell.n,
            r.cell.m,
            r.cell.k,
            format_f64(r.cell.eps_eta),
            r.cell.ensemble,
            r.cell.magnitude_law,
            r.solver,
            r.success_count,
            r.trials,
            format_f64(row.reference),
            row.vacuous,
            row.dominates,
        ));
    }
    out
}

fn soundness_rows_to_csv(rows: &[SoundnessRow]) -> String {
    let mut out = String::from(
        "n,m,k,eps_eta,ensemble,magnitude_law,trials,consistent_hold_success,consistent_hold_fail,consistent_miss_success,consistent_miss_fail,literal_hold_fail,erc_hold_fail\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:?},{:?},{},{},{},{},{},{},{}\n",
            r.cell.n,
            r.cell.m,
            r.cell.k,
            format_f64(r.cell.eps_eta),
            r.cell.ensemble,
            r.cell.magnitude_law,
            r.trials,
            r.consistent_hold_success,
            r.consistent_hold_fail,
            r.consistent_miss_success,
            r.consistent_miss_fail,
            r.literal_hold_fail,
            r.erc_hold_fail,
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment(
    config: &Path,
    out_dir: &Path,
    mode: ExperimentMode,
    eps: Option<f64>,
    delta: Option<f64>,
    t: Option<f64>,
    threads: Option<usize>,
    dry_run: bool,
) -> Result<(), CliError> {
    let grid = load_grid(config)?;

    if dry_run {
        println!("cells: {}", grid.cell_count());
        println!("trials: {}", grid.trial_total());
        return Ok(());
    }

    if let Some(threads) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(usage)?;
    }

    fs::create_dir_all(out_dir)
        .map_err(|e| usage(format!("cannot create {}: {}", out_dir.display(), e)))?;
    let write = |name: &str, contents: &str| -> Result<(), CliError> {
        let path = out_dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))
    };

    let experiment_error = |e: olsrec_core::experiments::ExperimentError| {
        use olsrec_core::experiments::ExperimentError as E;
        match e {
            E::EmptyGrid(_) | E::InvalidExperiment(_) | E::BudgetExceeded { .. } => usage(e),
            _ => numerical(e),
        }
    };

    let csv_name = match mode {
        ExperimentMode::Phase => {
            let results = run_phase_transition(&grid).map_err(experiment_error)?;
            write("results.csv", &results_to_csv(&results))?;
            "results.csv"
        }
        ExperimentMode::Bound => {
            let (eps, delta, t) = match (eps, delta, t) {
                (Some(e), Some(d), Some(t)) => (e, d, t),
                _ => {
                    return Err(CliError::Usage(
                        "--mode bound requires --eps, --delta, and --t".to_string(),
                    ))
                }
            };
            let rows = run_bound_comparison(&grid, eps, delta, t).map_err(experiment_error)?;
            write("bound_comparison.csv", &bound_rows_to_csv(&rows))?;
            "bound_comparison.csv"
        }
        ExperimentMode::Soundness => {
            let rows = run_certificate_soundness(&grid).map_err(experiment_error)?;
            write("soundness.csv", &soundness_rows_to_csv(&rows))?;
            "soundness.csv"
        }
    };

    let manifest = Manifest::new(&grid);
    let manifest_json = serde_json::to_string_pretty(&manifest).map_err(usage)?;
    write("manifest.json", &(manifest_json + "\n"))?;
    println!(
        "wrote {} and manifest.json to {}",
        csv_name,
        out_dir.display()
    );
    Ok(())
}

fn cmd_lemmas(
    seed: Option<u64>,
    n: usize,
    m: usize,
    k: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(s) => s
                .parse()
                .map_err(|_| usage(format!("invalid {}: {:?}", SEED_ENV, s)))?,
            Err(_) => 0,
        },
    };
    if k > n || m == 0 {
        return Err(CliError::Usage(format!(
            "invalid sizes n={}, m={}, k={}",
            n, m, k
        )));
    }
    let report = run_lemma_suite(seed, n, m, k);
    let line = |name: &str, pass: bool, margin: String| {
        println!("{}: {} ({})", name, if pass { "PASS" } else { "FAIL" }, margin);
    };
    line(
        "interlacing",
        report.interlacing_pass,
        format!("min slack {}", format_f64(report.interlacing_min_slack)),
    );
    line(
        "decomposition",
        report.decomposition_pass,
        format!("max rel err {}", format_f64(report.decomposition_max_rel_err)),
    );
    line(
        "concentration mean",
        report.concentration_mean_pass,
        format!("empirical mean {}", format_f64(report.concentration.empirical_mean)),
    );
    line(
        "concentration tail",
        report.concentration_tail_pass,
        format!(
            "violation rate {} vs bound {}",
            format_f64(report.concentration.violation_rate),
            format_f64(report.concentration.tail_bound)
        ),
    );
    let all = report.all_pass();
    if let Some(path) = out {
        write_json(&report, Some(path))?;
    }
    if all {
        Ok(())
    } else {
        Err(CliError::Numerical("lemma suite failed".to_string()))
    }
}
