//! Reproducible random generation: Gaussian and Bernoulli measurement
//! matrices, sparse signals with a magnitude floor, l2-bounded noise,
//! and the projector / singular-value concentration experiments.
//!
//! Every draw is a pure function of its spec. Experiments derive
//! per-object seeds from a master seed through [`derive_seed`] so that
//! matrix, signal and noise streams never overlap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::bounds::c0;
use crate::linalg::{DenseMatrix, DenseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EnsembleKind {
    Gaussian,
    Bernoulli,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Rescale each column to exact unit norm (expected norm is already
    /// 1 without it).
    #[serde(default)]
    pub normalize_columns: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MagnitudeLaw {
    Constant,
    UniformAboveMin,
    GaussianRejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignLaw {
    Random,
    Positive,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SignalSpec {
    pub m: usize,
    pub k: usize,
    pub beta_min: f64,
    pub magnitude_law: MagnitudeLaw,
    pub sign_law: SignLaw,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NoiseMode {
    /// A random direction scaled to exactly `eps_eta` (the adversarial
    /// budget boundary, the default for worst-case experiments).
    ExactNorm,
    UniformBall,
    GaussianClipped,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub n: usize,
    pub eps_eta: f64,
    pub mode: NoiseMode,
    pub seed: u64,
}

fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    *state = z ^ (z >> 31);
}

/// Deterministic seed-stream splitting: master seed plus a role tag and
/// index coordinates (cell, trial, ...) map to a stream seed.
pub fn derive_seed(master: u64, role: &str, indices: &[u64]) -> u64 {
    // FNV-1a over the role tag, then splitmix over the coordinates
    let mut tag: u64 = 0xcbf29ce484222325;
    for b in role.bytes() {
        tag ^= b as u64;
        tag = tag.wrapping_mul(0x100000001b3);
    }
    let mut state = master ^ tag;
    splitmix64(&mut state);
    for &ix in indices {
        state ^= ix.wrapping_mul(0x2545f4914f6cdd1d);
        splitmix64(&mut state);
    }
    state
}

fn draw_entries(rng: &mut ChaCha8Rng, kind: EnsembleKind, n: usize, m: usize) -> DenseMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = DenseMatrix::zeros(n, m);
    // column-major fill, fixed order for determinism
    for j in 0..m {
        for i in 0..n {
            out[(i, j)] = match kind {
                EnsembleKind::Gaussian => {
                    let g: f64 = StandardNormal.sample(rng);
                    g * scale
                }
                EnsembleKind::Bernoulli => {
                    if rng.random_bool(0.5) {
                        scale
                    } else {
                        -scale
                    }
                }
            };
        }
    }
    out
}

/// Draws an `n x m` measurement matrix with entries of variance `1/n`.
pub fn draw_matrix(spec: &EnsembleSpec) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut h = draw_entries(&mut rng, spec.kind, spec.n, spec.m);
    if spec.normalize_columns {
        for j in 0..spec.m {
            let norm = h.column(j).norm();
            if norm > 0.0 {
                h.column_mut(j).scale_mut(1.0 / norm);
            }
        }
    }
    h
}

/// Draws a `k`-sparse signal with uniformly random support and nonzero
/// magnitudes at least `beta_min`.
pub fn draw_signal(spec: &SignalSpec) -> (DenseVector, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut support = rand::seq::index::sample(&mut rng, spec.m, spec.k).into_vec();
    support.sort_unstable();
    let mut beta = DenseVector::zeros(spec.m);
    for &j in &support {
        let magnitude = match spec.magnitude_law {
            MagnitudeLaw::Constant => spec.beta_min,
            MagnitudeLaw::UniformAboveMin => {
                spec.beta_min * (1.0 + rng.random_range(0.0..1.0))
            }
            MagnitudeLaw::GaussianRejected => loop {
                let g: f64 = StandardNormal.sample(&mut rng);
                let x = (2.0 * spec.beta_min * g).abs();
                if x >= spec.beta_min {
                    break x;
                }
            },
        };
        let sign = match spec.sign_law {
            SignLaw::Positive => 1.0,
            SignLaw::Random => {
                if rng.random_bool(0.5) {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        beta[j] = sign * magnitude;
    }
    (beta, support)
}

/// Draws a noise vector with `||eta|| <= eps_eta`.
pub fn draw_noise(spec: &NoiseSpec) -> DenseVector {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    if spec.eps_eta == 0.0 {
        return DenseVector::zeros(spec.n);
    }
    match spec.mode {
        NoiseMode::ExactNorm => {
            let g = gaussian_direction(&mut rng, spec.n);
            g * spec.eps_eta
        }
        NoiseMode::UniformBall => {
            let g = gaussian_direction(&mut rng, spec.n);
            let u: f64 = rng.random_range(0.0..1.0);
            g * (spec.eps_eta * u.powf(1.0 / spec.n as f64))
        }
        NoiseMode::GaussianClipped => {
            // per-entry std eps/(3 sqrt(n)); rescaled if the draw leaves
            // the budget ball
            let sigma = spec.eps_eta / (3.0 * (spec.n as f64).sqrt());
            let mut g = DenseVector::zeros(spec.n);
            for i in 0..spec.n {
                let x: f64 = StandardNormal.sample(&mut rng);
                g[i] = sigma * x;
            }
            let norm = g.norm();
            if norm > spec.eps_eta {
                g * (spec.eps_eta / norm)
            } else {
                g
            }
        }
    }
}

fn gaussian_direction(rng: &mut ChaCha8Rng, n: usize) -> DenseVector {
    loop {
        let g = DenseVector::from_iterator(n, (0..n).map(|_| {
            let x: f64 = StandardNormal.sample(rng);
            x
        }));
        let norm = g.norm();
        if norm > 0.0 {
            return g / norm;
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConcentrationResult {
    pub empirical_mean: f64,
    pub violation_rate: f64,
    /// The closed-form tail `2 exp(-k c0(eps))` to compare against.
    pub tail_bound: f64,
}

/// Monte Carlo check of the projected-norm concentration: draws `H_k`
/// and an independent `u` from the ensemble and measures
/// `||P_k u||^2 / ||u||^2` against its expectation `k/n`.
pub fn projector_concentration_trial(
    n: usize,
    k: usize,
    kind: EnsembleKind,
    trials: usize,
    eps: f64,
    seed: u64,
) -> ConcentrationResult {
    let expected = k as f64 / n as f64;
    let mut sum = 0.0;
    let mut violations = 0usize;
    for t in 0..trials {
        let h_k = draw_matrix(&EnsembleSpec {
            kind,
            n,
            m: k,
            seed: derive_seed(seed, "concentration-matrix", &[t as u64]),
            normalize_columns: false,
        });
        let u = draw_matrix(&EnsembleSpec {
            kind,
            n,
            m: 1,
            seed: derive_seed(seed, "concentration-vector", &[t as u64]),
            normalize_columns: false,
        });
        let u = DenseVector::from_column_slice(u.column(0).as_slice());
        // ||P_k u||^2 = ||Q^T u||^2 for a thin orthonormal basis Q
        let q = h_k.qr().q();
        let v = (q.transpose() * &u).norm_squared() / u.norm_squared();
        sum += v;
        if (v - expected).abs() > eps * expected {
            violations += 1;
        }
    }
    ConcentrationResult {
        empirical_mean: sum / trials as f64,
        violation_rate: violations as f64 / trials as f64,
        tail_bound: 2.0 * (-(k as f64) * c0(eps).unwrap_or(0.0)).exp(),
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SigmaConcentrationResult {
    pub violation_rate: f64,
    /// `2 (12/delta)^k exp(-n c0(delta/2))`, the probability budget for
    /// `sigma_min` leaving `[1 - delta, 1 + delta]`.
    pub bound_complement: f64,
}

/// Empirical frequency of `sigma_min(Hbar)` escaping `[1-delta, 1+delta]`
/// over random `n x k` submatrices.
pub fn sigma_concentration_trial(
    n: usize,
    k: usize,
    delta: f64,
    kind: EnsembleKind,
    trials: usize,
    seed: u64,
) -> SigmaConcentrationResult {
    let mut violations = 0usize;
    for t in 0..trials {
        let h_k = draw_matrix(&EnsembleSpec {
            kind,
            n,
            m: k,
            seed: derive_seed(seed, "sigma-matrix", &[t as u64]),
            normalize_columns: false,
        });
        let sv = h_k.singular_values();
        let sigma_min = sv[sv.len() - 1];
        if sigma_min < 1.0 - delta || sigma_min > 1.0 + delta {
            violations += 1;
        }
    }
    let bound_complement = 2.0
        * (12.0 / delta).powi(k as i32)
        * (-(n as f64) * c0(delta / 2.0).unwrap_or(0.0)).exp();
    SigmaConcentrationResult {
        violation_rate: violations as f64 / trials as f64,
        bound_complement,
    }
}
