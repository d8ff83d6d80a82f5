//! Greedy support identification: OLS, OMP and the exhaustive
//! l0-constrained least-squares oracle, with full per-iteration tracing.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    self, complement_projector, least_squares, least_squares_lenient, projector_downdate,
    DenseMatrix, DenseVector, LinalgError, Projector,
};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("no viable candidate: every remaining column is degenerate")]
    NoViableCandidate,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("combinatorial limit exceeded: C(m, k) = {combinations} > {limit}")]
    TooLarge { combinations: u128, limit: u128 },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Ols,
    Omp,
    Exhaustive,
}

/// A realization of the measurement model `y = H beta + eta`.
#[derive(Debug, Clone)]
pub struct MeasurementInstance {
    pub h: DenseMatrix,
    pub y: DenseVector,
    pub beta_true: Option<DenseVector>,
    pub eta: Option<DenseVector>,
    pub k: usize,
}

impl MeasurementInstance {
    pub fn new(
        h: DenseMatrix,
        y: DenseVector,
        beta_true: Option<DenseVector>,
        eta: Option<DenseVector>,
        k: usize,
    ) -> Result<Self, SolverError> {
        let (n, m) = (h.nrows(), h.ncols());
        if y.len() != n {
            return Err(SolverError::InvalidInstance(format!(
                "y has length {} but H has {} rows",
                y.len(),
                n
            )));
        }
        if let Some(beta) = &beta_true {
            if beta.len() != m {
                return Err(SolverError::InvalidInstance(format!(
                    "beta has length {} but H has {} columns",
                    beta.len(),
                    m
                )));
            }
            let nnz = beta.iter().filter(|x| **x != 0.0).count();
            if nnz > k {
                return Err(SolverError::InvalidInstance(format!(
                    "beta has {} nonzeros but k = {}",
                    nnz, k
                )));
            }
        }
        if let Some(eta) = &eta {
            if eta.len() != n {
                return Err(SolverError::InvalidInstance(format!(
                    "eta has length {} but H has {} rows",
                    eta.len(),
                    n
                )));
            }
        }
        if let (Some(beta), Some(eta)) = (&beta_true, &eta) {
            let defect = (&y - &h * beta - eta).norm();
            if defect > 1e-12 {
                return Err(SolverError::InvalidInstance(format!(
                    "y != H beta + eta (defect {:.3e})",
                    defect
                )));
            }
        }
        Ok(MeasurementInstance {
            h,
            y,
            beta_true,
            eta,
            k,
        })
    }

    /// Construct from consistent parts, computing `y = H beta + eta`.
    pub fn from_model(
        h: DenseMatrix,
        beta: DenseVector,
        eta: DenseVector,
        k: usize,
    ) -> Result<Self, SolverError> {
        let y = &h * &beta + &eta;
        Self::new(h, y, Some(beta), Some(eta), k)
    }

    /// Indices of nonzero entries of `beta_true`, ascending.
    pub fn true_support(&self) -> Option<Vec<usize>> {
        self.beta_true.as_ref().map(|b| {
            b.iter()
                .enumerate()
                .filter(|(_, x)| **x != 0.0)
                .map(|(j, _)| j)
                .collect()
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Iteration cap; `None` means run exactly `k` iterations.
    pub max_iters: Option<usize>,
    /// Stop once the residual norm drops to this value or below.
    pub residual_stop: Option<f64>,
    /// Select on a unit-column copy of `H` (coefficients are still
    /// reported for the original columns).
    pub normalize_columns: bool,
    /// Relative tolerance below which a projected column is skipped as
    /// carrying no new direction (scaled by the column norm).
    pub degenerate_skip_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iters: None,
            residual_stop: None,
            normalize_columns: false,
            degenerate_skip_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationRecord {
    pub selected_index: usize,
    pub residual_norm: f64,
    pub scores: BTreeMap<usize, f64>,
}

/// Per-iteration record of a greedy run. Indices are 0-based, marked by
/// `index_base` in the serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverTrace {
    pub algorithm: Algorithm,
    pub index_base: u8,
    pub initial_residual_norm: f64,
    pub iterations: Vec<IterationRecord>,
    pub support: Vec<usize>,
    pub coefficients: Vec<f64>,
    pub final_residual_norm: f64,
}

impl SolverTrace {
    pub fn selected_set(&self) -> BTreeSet<usize> {
        self.support.iter().copied().collect()
    }

    /// `[||r_0||, ||r_1||, ...]` including the initial residual.
    pub fn residual_norms(&self) -> Vec<f64> {
        std::iter::once(self.initial_residual_norm)
            .chain(self.iterations.iter().map(|it| it.residual_norm))
            .collect()
    }

    /// Exact support recovery: selected set equals the instance's true
    /// support as a set.
    pub fn recovers(&self, inst: &MeasurementInstance) -> bool {
        match inst.true_support() {
            Some(s) => self.selected_set() == s.into_iter().collect(),
            None => false,
        }
    }
}

fn unit_column_copy(h: &DenseMatrix) -> DenseMatrix {
    let mut out = h.clone();
    for j in 0..out.ncols() {
        let norm = out.column(j).norm();
        if norm > 0.0 {
            out.column_mut(j).scale_mut(1.0 / norm);
        }
    }
    out
}

/// One OLS selection step: maximize `|r^T P a_j| / ||P a_j||` over the
/// non-excluded candidates, ties broken by lowest index.
pub fn ols_select(
    residual: &DenseVector,
    p_perp: &Projector,
    h: &DenseMatrix,
    excluded: &BTreeSet<usize>,
    tol: f64,
) -> Result<(usize, BTreeMap<usize, f64>), SolverError> {
    let mut scores = BTreeMap::new();
    let mut best: Option<(usize, f64)> = None;
    for j in 0..h.ncols() {
        if excluded.contains(&j) {
            continue;
        }
        let a = DenseVector::from_column_slice(h.column(j).as_slice());
        let pa = p_perp.apply(&a);
        let norm = pa.norm();
        if norm <= tol * a.norm() {
            continue;
        }
        let score = (residual.dot(&pa) / norm).abs();
        scores.insert(j, score);
        if best.map_or(true, |(_, s)| score > s) {
            best = Some((j, score));
        }
    }
    match best {
        Some((j, _)) => Ok((j, scores)),
        None => Err(SolverError::NoViableCandidate),
    }
}

fn omp_select(
    residual: &DenseVector,
    p_perp: &Projector,
    h: &DenseMatrix,
    excluded: &BTreeSet<usize>,
    tol: f64,
) -> Result<(usize, BTreeMap<usize, f64>), SolverError> {
    let mut scores = BTreeMap::new();
    let mut best: Option<(usize, f64)> = None;
    for j in 0..h.ncols() {
        if excluded.contains(&j) {
            continue;
        }
        let a = DenseVector::from_column_slice(h.column(j).as_slice());
        // columns already in the selected span carry no new direction
        if p_perp.apply(&a).norm() <= tol * a.norm() {
            continue;
        }
        let score = residual.dot(&a).abs();
        scores.insert(j, score);
        if best.map_or(true, |(_, s)| score > s) {
            best = Some((j, score));
        }
    }
    match best {
        Some((j, _)) => Ok((j, scores)),
        None => Err(SolverError::NoViableCandidate),
    }
}

fn greedy_solve(
    inst: &MeasurementInstance,
    opts: &SolverOptions,
    algorithm: Algorithm,
) -> Result<SolverTrace, SolverError> {
    if inst.k > inst.h.nrows() {
        return Err(SolverError::InvalidInstance(format!(
            "k = {} exceeds n = {}",
            inst.k,
            inst.h.nrows()
        )));
    }
    let h_sel = if opts.normalize_columns {
        unit_column_copy(&inst.h)
    } else {
        inst.h.clone()
    };
    let n = inst.h.nrows();
    let max_iters = opts.max_iters.unwrap_or(inst.k);
    let mut p = Projector::identity(n);
    let mut r = inst.y.clone();
    let initial_residual_norm = r.norm();
    let mut excluded = BTreeSet::new();
    let mut iterations = Vec::new();
    let mut support = Vec::new();

    for _ in 0..max_iters {
        if let Some(stop) = opts.residual_stop {
            if r.norm() <= stop {
                break;
            }
        }
        let (j, scores) = match algorithm {
            Algorithm::Ols => ols_select(&r, &p, &h_sel, &excluded, opts.degenerate_skip_tol)?,
            Algorithm::Omp => omp_select(&r, &p, &h_sel, &excluded, opts.degenerate_skip_tol)?,
            Algorithm::Exhaustive => unreachable!("exhaustive is not a greedy path"),
        };
        let a = DenseVector::from_column_slice(h_sel.column(j).as_slice());
        p = projector_downdate(&p, &a, opts.degenerate_skip_tol * a.norm())?;
        r = p.apply(&inst.y);
        excluded.insert(j);
        support.push(j);
        iterations.push(IterationRecord {
            selected_index: j,
            residual_norm: r.norm(),
            scores,
        });
    }

    let coefficients = if support.is_empty() {
        Vec::new()
    } else {
        let b = linalg::columns(&inst.h, &support);
        least_squares(&b, &inst.y)?.iter().copied().collect()
    };
    let final_residual_norm = iterations
        .last()
        .map_or(initial_residual_norm, |it| it.residual_norm);

    Ok(SolverTrace {
        algorithm,
        index_base: 0,
        initial_residual_norm,
        iterations,
        support,
        coefficients,
        final_residual_norm,
    })
}

/// Orthogonal Least-Squares: each iteration selects the column whose
/// inclusion minimizes the new residual norm, evaluated through the
/// normalized projected-correlation criterion.
pub fn ols_solve(
    inst: &MeasurementInstance,
    opts: &SolverOptions,
) -> Result<SolverTrace, SolverError> {
    greedy_solve(inst, opts, Algorithm::Ols)
}

/// Orthogonal Matching Pursuit: selects by raw correlation with the
/// residual, then re-projects onto the selected span.
pub fn omp_solve(
    inst: &MeasurementInstance,
    opts: &SolverOptions,
) -> Result<SolverTrace, SolverError> {
    greedy_solve(inst, opts, Algorithm::Omp)
}

const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

fn binomial(m: u128, k: u128) -> u128 {
    let k = k.min(m - k.min(m));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(m - i) / (i + 1);
        if acc > EXHAUSTIVE_LIMIT * 1000 {
            return u128::MAX;
        }
    }
    acc
}

/// Exhaustive l0-constrained least squares: the support of size <= k
/// minimizing `||y - H beta||^2`, ties broken lexicographically.
pub fn exhaustive_l0(inst: &MeasurementInstance) -> Result<SolverTrace, SolverError> {
    use itertools::Itertools;

    let m = inst.h.ncols();
    let k = inst.k.min(m);
    let combinations = binomial(m as u128, k as u128);
    if combinations > EXHAUSTIVE_LIMIT {
        return Err(SolverError::TooLarge {
            combinations,
            limit: EXHAUSTIVE_LIMIT,
        });
    }

    let mut best: Option<(Vec<usize>, DenseVector, f64)> = None;
    for subset in (0..m).combinations(k) {
        let b = linalg::columns(&inst.h, &subset);
        let w = least_squares_lenient(&b, &inst.y);
        let obj = (&inst.y - &b * &w).norm_squared();
        // strict improvement keeps the lexicographically first minimizer
        if best.as_ref().map_or(true, |(_, _, o)| obj < *o) {
            best = Some((subset, w, obj));
        }
    }
    let (support, w, obj) = best.ok_or(SolverError::NoViableCandidate)?;

    Ok(SolverTrace {
        algorithm: Algorithm::Exhaustive,
        index_base: 0,
        initial_residual_norm: inst.y.norm(),
        iterations: Vec::new(),
        support,
        coefficients: w.iter().copied().collect(),
        final_residual_norm: obj.sqrt(),
    })
}

/// Noise/residual decomposition at a partial support `S_i` contained in
/// the true support: `eta = Hbar w + eta_perp`, `r_i = eta_perp + P_i
/// Hbar_{i^c} z_{i^c}` with `z = betabar + w`.
#[derive(Debug, Clone)]
pub struct ResidualDecomposition {
    pub eta_perp: DenseVector,
    pub signal_part: DenseVector,
    pub w: DenseVector,
    pub z: DenseVector,
    pub residual: DenseVector,
}

pub fn residual_decompose(
    inst: &MeasurementInstance,
    s_i: &[usize],
) -> Result<ResidualDecomposition, SolverError> {
    let support = inst.true_support().ok_or_else(|| {
        SolverError::InvalidDecomposition("beta_true is required".to_string())
    })?;
    let eta = inst
        .eta
        .as_ref()
        .ok_or_else(|| SolverError::InvalidDecomposition("eta is required".to_string()))?;
    let support_set: BTreeSet<usize> = support.iter().copied().collect();
    for &j in s_i {
        if !support_set.contains(&j) {
            return Err(SolverError::InvalidDecomposition(format!(
                "index {} is not in the true support",
                j
            )));
        }
    }

    let h_bar = linalg::columns(&inst.h, &support);
    let beta_bar = DenseVector::from_iterator(
        support.len(),
        support.iter().map(|&j| inst.beta_true.as_ref().unwrap()[j]),
    );
    let w = DenseVector::from_column_slice(
        (&linalg::pseudo_inverse(&h_bar)? * eta).as_slice(),
    );
    let z = &beta_bar + &w;
    let p_k = complement_projector(&h_bar)?;
    let eta_perp = p_k.apply(eta);

    let s_i_set: BTreeSet<usize> = s_i.iter().copied().collect();
    let complement: Vec<usize> = support
        .iter()
        .copied()
        .filter(|j| !s_i_set.contains(j))
        .collect();
    let z_c = DenseVector::from_iterator(
        complement.len(),
        complement
            .iter()
            .map(|j| z[support.iter().position(|s| s == j).unwrap()]),
    );
    let h_c = linalg::columns(&inst.h, &complement);
    let selected = linalg::columns(&inst.h, s_i);
    let p_i = complement_projector(&selected)?;
    let signal_part = p_i.apply(&(&h_c * &z_c));
    let residual = &eta_perp + &signal_part;

    Ok(ResidualDecomposition {
        eta_perp,
        signal_part,
        w,
        z,
        residual,
    })
}
