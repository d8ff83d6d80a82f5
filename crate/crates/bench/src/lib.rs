//! Shared fixtures for the benchmark targets.

use olsrec_core::ensembles::{
    derive_seed, draw_matrix, draw_signal, EnsembleKind, EnsembleSpec, MagnitudeLaw, SignLaw,
    SignalSpec,
};
use olsrec_core::{DenseVector, MeasurementInstance};

pub fn noiseless_instance(n: usize, m: usize, k: usize, seed: u64) -> MeasurementInstance {
    let h = draw_matrix(&EnsembleSpec {
        kind: EnsembleKind::Gaussian,
        n,
        m,
        seed: derive_seed(seed, "bench-matrix", &[]),
        normalize_columns: false,
    });
    let (beta, _) = draw_signal(&SignalSpec {
        m,
        k,
        beta_min: 1.0,
        magnitude_law: MagnitudeLaw::Constant,
        sign_law: SignLaw::Random,
        seed: derive_seed(seed, "bench-signal", &[]),
    });
    let eta = DenseVector::zeros(n);
    MeasurementInstance::from_model(h, beta, eta, k).unwrap()
}
