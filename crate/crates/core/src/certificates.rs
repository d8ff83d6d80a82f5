//! Exact-recovery certificates: the OMP constant `M_OMP`, the OLS
//! per-iteration constants `M_{i+1}` along a nested path, the selection
//! ratio `rho(r_i)` and the beta_min condition for noisy recovery.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    self, complement_projector, induced_norm_1_1, pseudo_inverse, spectral_extremes,
    DenseMatrix, DenseVector, LinalgError,
};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("degenerate projected column at index {index}")]
    DegenerateColumn { index: usize },
    #[error("indeterminate ratio: all remaining true atoms are orthogonal to the residual")]
    Indeterminate,
    #[error("condition inapplicable: M = {m} >= 1")]
    ConditionInapplicable { m: f64 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Certificate values along a nested selection path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErcReport {
    pub m_omp: f64,
    /// `M_{i+1}` for each prefix of `path` (the empty prefix first).
    pub m_ols_per_iter: Vec<f64>,
    pub erc_holds: Vec<bool>,
    pub path: Vec<usize>,
}

impl ErcReport {
    pub fn all_hold(&self) -> bool {
        self.erc_holds.iter().all(|h| *h)
    }
}

/// `rho(r_i)`: ratio of the strongest off-support to the strongest
/// remaining-support normalized projected correlation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SelectionRatio {
    pub value: f64,
    pub numerator: f64,
    pub denominator: f64,
}

/// The beta_min condition of the noisy recovery guarantee, evaluated in
/// two variants (see [`theorem1_verdict`]).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Theorem1Verdict {
    pub beta_min: f64,
    pub rhs_literal: f64,
    pub rhs_consistent: f64,
    pub holds_literal: bool,
    pub holds_consistent: bool,
    pub eps_eta: f64,
    pub sigma_min: f64,
    pub m: f64,
}

/// Per-iteration outcome when the applicability of the condition itself
/// depends on `M_{i+1} < 1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictOutcome {
    Applicable(Theorem1Verdict),
    Inapplicable { m: f64 },
}

impl VerdictOutcome {
    pub fn holds_consistent(&self) -> bool {
        matches!(self, VerdictOutcome::Applicable(v) if v.holds_consistent)
    }

    pub fn holds_literal(&self) -> bool {
        matches!(self, VerdictOutcome::Applicable(v) if v.holds_literal)
    }
}

/// Columns `P^perp a_j / ||P^perp a_j||` for `j` in `targets`, where the
/// projector is the complement of the columns in `selected`.
pub fn normalized_projected_columns(
    h: &DenseMatrix,
    selected: &[usize],
    targets: &[usize],
) -> Result<DenseMatrix, CertificateError> {
    let p = complement_projector(&linalg::columns(h, selected))?;
    let mut out = DenseMatrix::zeros(h.nrows(), targets.len());
    for (c, &j) in targets.iter().enumerate() {
        let a = DenseVector::from_column_slice(h.column(j).as_slice());
        let pa = p.apply(&a);
        let norm = pa.norm();
        if norm <= 1e-10 * a.norm() {
            return Err(CertificateError::DegenerateColumn { index: j });
        }
        out.set_column(c, &(pa / norm).column(0));
    }
    Ok(out)
}

fn off_support(m: usize, s_opt: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = s_opt.iter().copied().collect();
    (0..m).filter(|j| !set.contains(j)).collect()
}

/// `M_OMP = ||Hbar^dagger Htilde||_{1,1}`.
pub fn erc_omp(h: &DenseMatrix, s_opt: &[usize]) -> Result<f64, CertificateError> {
    let h_bar = linalg::columns(h, s_opt);
    let h_tilde = linalg::columns(h, &off_support(h.ncols(), s_opt));
    let pinv = pseudo_inverse(&h_bar)?;
    Ok(induced_norm_1_1(&(&pinv * &h_tilde)))
}

/// `M_{i+1} = ||Phi_{S_i}^dagger Psi_{S_i}||_{1,1}` for every prefix of
/// `path`, starting with the empty prefix.
pub fn erc_ols_path(
    h: &DenseMatrix,
    s_opt: &[usize],
    path: &[usize],
) -> Result<ErcReport, CertificateError> {
    let s_opt_set: BTreeSet<usize> = s_opt.iter().copied().collect();
    let mut seen = BTreeSet::new();
    for &j in path {
        if !s_opt_set.contains(&j) {
            return Err(CertificateError::InvalidPath(format!(
                "path index {} is not in the optimal support",
                j
            )));
        }
        if !seen.insert(j) {
            return Err(CertificateError::InvalidPath(format!(
                "path index {} repeats",
                j
            )));
        }
    }

    let complement = off_support(h.ncols(), s_opt);
    let mut m_values = Vec::new();
    let mut holds = Vec::new();
    for i in 0..=path.len() {
        if i == s_opt.len() {
            break; // no remaining true atoms, M is undefined
        }
        let prefix = &path[..i];
        let prefix_set: BTreeSet<usize> = prefix.iter().copied().collect();
        let remaining: Vec<usize> = s_opt
            .iter()
            .copied()
            .filter(|j| !prefix_set.contains(j))
            .collect();
        let phi = normalized_projected_columns(h, prefix, &remaining)?;
        let psi = normalized_projected_columns(h, prefix, &complement)?;
        let pinv = pseudo_inverse(&phi)?;
        let m = induced_norm_1_1(&(&pinv * &psi));
        holds.push(m < 1.0);
        m_values.push(m);
    }

    Ok(ErcReport {
        m_omp: erc_omp(h, s_opt)?,
        m_ols_per_iter: m_values,
        erc_holds: holds,
        path: path.to_vec(),
    })
}

/// `rho(r_i) = ||Psi^T r||_inf / ||Phi^T r||_inf`. Values below 1
/// certify that the next OLS selection lands in the remaining support.
pub fn selection_ratio(
    h: &DenseMatrix,
    s_opt: &[usize],
    s_i: &[usize],
    r: &DenseVector,
) -> Result<SelectionRatio, CertificateError> {
    let s_i_set: BTreeSet<usize> = s_i.iter().copied().collect();
    let remaining: Vec<usize> = s_opt
        .iter()
        .copied()
        .filter(|j| !s_i_set.contains(j))
        .collect();
    let complement = off_support(h.ncols(), s_opt);
    let phi = normalized_projected_columns(h, s_i, &remaining)?;
    let denominator = (phi.transpose() * r).amax();
    if denominator == 0.0 {
        return Err(CertificateError::Indeterminate);
    }
    let numerator = if complement.is_empty() {
        0.0
    } else {
        let psi = normalized_projected_columns(h, s_i, &complement)?;
        (psi.transpose() * r).amax()
    };
    Ok(SelectionRatio {
        value: numerator / denominator,
        numerator,
        denominator,
    })
}

/// Evaluates the beta_min condition for one iteration.
///
/// Two right-hand sides are reported: the literal form
/// `sigma_min * eps + eps / ((1 - M) sigma_min^2)` and the
/// derivation-consistent form with `eps / sigma_min` as the first term.
/// The consistent variant is what the underlying chain of inequalities
/// actually supports; both verdicts are returned.
pub fn theorem1_verdict(
    m: f64,
    sigma_min: f64,
    beta_min: f64,
    eps_eta: f64,
) -> Result<Theorem1Verdict, CertificateError> {
    if m >= 1.0 {
        return Err(CertificateError::ConditionInapplicable { m });
    }
    let tail = eps_eta / ((1.0 - m) * sigma_min * sigma_min);
    let rhs_literal = sigma_min * eps_eta + tail;
    let rhs_consistent = eps_eta / sigma_min + tail;
    Ok(Theorem1Verdict {
        beta_min,
        rhs_literal,
        rhs_consistent,
        holds_literal: beta_min > rhs_literal,
        holds_consistent: beta_min > rhs_consistent,
        eps_eta,
        sigma_min,
        m,
    })
}

/// Per-iteration beta_min verdicts along `path` (a nested sequence of
/// true indices, the actual OLS path by default).
pub fn theorem1_check(
    h: &DenseMatrix,
    s_opt: &[usize],
    beta: &DenseVector,
    eps_eta: f64,
    path: &[usize],
) -> Result<Vec<VerdictOutcome>, CertificateError> {
    let report = erc_ols_path(h, s_opt, path)?;
    let h_bar = linalg::columns(h, s_opt);
    let sigma_min = spectral_extremes(&h_bar)?.sigma_min;
    let beta_min = s_opt
        .iter()
        .map(|&j| beta[j].abs())
        .fold(f64::INFINITY, f64::min);
    Ok(report
        .m_ols_per_iter
        .iter()
        .map(|&m| match theorem1_verdict(m, sigma_min, beta_min, eps_eta) {
            Ok(v) => VerdictOutcome::Applicable(v),
            Err(_) => VerdictOutcome::Inapplicable { m },
        })
        .collect())
}

/// `sigma_min(Hbar)^3 < 1 / (1 - M_OMP)`: when true, the prior
/// coherence-style condition is more restrictive than the beta_min
/// condition computed here.
pub fn remark1_comparison(h: &DenseMatrix, s_opt: &[usize]) -> Result<bool, CertificateError> {
    let m_omp = erc_omp(h, s_opt)?;
    if m_omp >= 1.0 {
        return Err(CertificateError::ConditionInapplicable { m: m_omp });
    }
    let sigma_min = spectral_extremes(&linalg::columns(h, s_opt))?.sigma_min;
    Ok(remark1_inequality(sigma_min, m_omp))
}

pub fn remark1_inequality(sigma_min: f64, m_omp: f64) -> bool {
    sigma_min.powi(3) < 1.0 / (1.0 - m_omp)
}
