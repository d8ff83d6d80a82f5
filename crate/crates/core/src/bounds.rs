//! Closed-form evaluators for the probabilistic recovery guarantees:
//! the concentration constants `c0`, `c1`, the success-probability lower
//! bound for random ensembles, the SNR scaling and the sample-complexity
//! expression. Natural logarithms throughout.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub eps: f64,
    pub delta: f64,
    pub t: f64,
}

impl BoundParams {
    fn validate(&self) -> Result<(), BoundError> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(BoundError::InvalidParam(format!("eps = {}", self.eps)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(BoundError::InvalidParam(format!("delta = {}", self.delta)));
        }
        if self.t <= 0.0 {
            return Err(BoundError::InvalidParam(format!("t = {}", self.t)));
        }
        if self.k > self.n {
            return Err(BoundError::InvalidParam(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        if self.k > self.m {
            return Err(BoundError::InvalidParam(format!(
                "k = {} exceeds m = {}",
                self.k, self.m
            )));
        }
        Ok(())
    }
}

/// Success-probability lower bound, factor by factor. `total_raw` keeps
/// the unclamped value; when any factor is negative the bound is vacuous
/// and `total_raw` is capped at 0 (a vacuous bound carries no
/// information beyond "at least nothing").
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundResult {
    pub p1: f64,
    pub p2: f64,
    pub p3_factor: f64,
    pub total_raw: f64,
    pub total: f64,
    pub vacuous: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexityParams {
    pub gamma: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl ComplexityParams {
    fn validate(&self) -> Result<(), BoundError> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(BoundError::InvalidParam(format!("gamma = {}", self.gamma)));
        }
        if self.c1 <= 0.0 || self.c2 <= 0.0 || self.c3 <= 0.0 {
            return Err(BoundError::InvalidParam(
                "constants must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// `c0(eps) = eps^2/4 - eps^3/6`, the concentration exponent rate.
pub fn c0(eps: f64) -> Result<f64, BoundError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(BoundError::InvalidParam(format!("eps = {}", eps)));
    }
    Ok(eps * eps / 4.0 - eps * eps * eps / 6.0)
}

/// `c1(eps) = sqrt((1 - eps) / (1 + eps))`, in (0, 1) and decreasing.
pub fn c1(eps: f64) -> Result<f64, BoundError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(BoundError::InvalidParam(format!("eps = {}", eps)));
    }
    Ok(((1.0 - eps) / (1.0 + eps)).sqrt())
}

/// Evaluates the three-factor success-probability lower bound
/// `p1 * p2 * p3^(m-k)` for a random Gaussian or Bernoulli ensemble.
pub fn theorem2_bound(p: &BoundParams) -> Result<BoundResult, BoundError> {
    p.validate()?;
    let (n, m, k) = (p.n as f64, p.m, p.k);
    let kf = k as f64;

    let p1_inner = 1.0 - 2.0 * (-(n - kf + 1.0) * c0(p.eps)?).exp();
    let p1 = p1_inner * p1_inner;
    let p2 = 1.0 - 2.0 * (12.0 / p.delta).powi(k as i32) * (-n * c0(p.delta / 2.0)?).exp();

    let ratio = (1.0 - p.eps) / (1.0 + p.eps);
    let quartic = (1.0 - p.delta).powi(4);
    let mut sum = 0.0;
    for i in 0..k {
        let denom = kf * (1.0 / ((kf - i as f64) * p.t * p.t) + (1.0 + p.delta) * (1.0 + p.delta));
        sum += (-n * ratio * quartic / denom).exp();
    }
    let p3_factor = 1.0 - 2.0 * sum;

    let vacuous = p1 <= 0.0 || p2 <= 0.0 || p3_factor <= 0.0;
    let mut total_raw = if p3_factor >= 0.0 {
        p1 * p2 * p3_factor.powi((m - k) as i32)
    } else {
        // odd-extended power keeps the sign informative
        p1 * p2 * -((-p3_factor).powi((m - k) as i32))
    };
    if vacuous && total_raw > 0.0 {
        // two negative factors must not masquerade as a valid bound
        total_raw = -total_raw;
    }
    Ok(BoundResult {
        p1,
        p2,
        p3_factor,
        total_raw,
        total: total_raw.clamp(0.0, 1.0),
        vacuous,
    })
}

/// `SNR ~ k (1 + delta + t)^2`: the signal-to-noise ratio implied by the
/// beta_min hypothesis, linear in the sparsity level.
pub fn snr_requirement(k: usize, delta: f64, t: f64) -> f64 {
    let s = 1.0 + delta + t;
    k as f64 * s * s
}

/// `n >= max{(2/C1) k ln(m/gamma), C2 k + ln(12/gamma^2)/C3}`, rounded up.
pub fn sample_complexity(k: usize, m: usize, c: &ComplexityParams) -> Result<usize, BoundError> {
    c.validate()?;
    let kf = k as f64;
    let first = (2.0 / c.c1) * kf * (m as f64 / c.gamma).ln();
    let second = c.c2 * kf + (12.0 / (c.gamma * c.gamma)).ln() / c.c3;
    Ok(first.max(second).ceil() as usize)
}
