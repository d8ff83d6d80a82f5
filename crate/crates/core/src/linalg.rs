//! Dense linear-algebra primitives: orthogonal-complement projectors,
//! the rank-one projector downdate, least squares and the induced
//! (1,1) operator norm.
//!
//! Matrices are desk-scale (n up to a few thousand) so projectors are
//! materialized as explicit `n x n` matrices.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

pub type DenseMatrix = DMatrix<f64>;
pub type DenseVector = DVector<f64>;

/// Relative singular-value threshold below which a matrix is treated as
/// rank deficient.
pub const TAU_RANK_REL: f64 = 1e-10;
/// Frobenius tolerance for projector idempotence checks.
pub const TAU_PROJ: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("rank-deficient matrix (smallest singular value {sigma_min:.3e})")]
    RankDeficient { sigma_min: f64 },
    #[error("column lies in the selected span (projected norm {projected_norm:.3e} <= tol {tol:.3e})")]
    DegenerateColumn { projected_norm: f64, tol: f64 },
    #[error("empty matrix")]
    Empty,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Orthogonal projector onto the complement of a column span.
///
/// Invariants: symmetric, idempotent within [`TAU_PROJ`].
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: DenseMatrix,
}

impl Projector {
    /// Identity projector (complement of the trivial subspace {0}).
    pub fn identity(dim: usize) -> Self {
        Projector {
            matrix: DenseMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &DenseVector) -> DenseVector {
        &self.matrix * v
    }

    /// Frobenius defect of `P*P - P`.
    pub fn idempotence_defect(&self) -> f64 {
        (&self.matrix * &self.matrix - &self.matrix).norm()
    }
}

/// Extreme singular values of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralExtremes {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// `I - B B^dagger`, the orthogonal projector onto the complement of the
/// column span of `B`. An empty `B` (zero columns) yields the identity.
pub fn complement_projector(b: &DenseMatrix) -> Result<Projector, LinalgError> {
    let n = b.nrows();
    if b.ncols() == 0 {
        return Ok(Projector::identity(n));
    }
    let svd = b.clone().svd(true, false);
    let sigma_max = svd.singular_values[0];
    let sigma_min = svd.singular_values[svd.singular_values.len() - 1];
    if sigma_min <= TAU_RANK_REL * sigma_max {
        return Err(LinalgError::RankDeficient { sigma_min });
    }
    let u = svd.u.expect("svd computed with u");
    let mut p = DenseMatrix::identity(n, n);
    // I - U U^T over the leading r = ncols singular vectors
    p.gemm(-1.0, &u, &u.transpose(), 1.0);
    Ok(Projector { matrix: p })
}

/// Rank-one downdate `P - (P a a^T P) / ||P a||^2` after adding column `a`
/// to the selected set.
pub fn projector_downdate(
    p: &Projector,
    a: &DenseVector,
    tol: f64,
) -> Result<Projector, LinalgError> {
    if a.len() != p.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "projector dim {} vs column length {}",
            p.dim(),
            a.len()
        )));
    }
    let pa = p.apply(a);
    let norm = pa.norm();
    if norm <= tol {
        return Err(LinalgError::DegenerateColumn {
            projected_norm: norm,
            tol,
        });
    }
    let mut m = p.matrix.clone();
    // P is symmetric so P a a^T P = (Pa)(Pa)^T
    m.ger(-1.0 / (norm * norm), &pa, &pa, 1.0);
    Ok(Projector { matrix: m })
}

/// Default degenerate-column tolerance for [`projector_downdate`].
pub fn default_downdate_tol(a: &DenseVector) -> f64 {
    1e-10 * a.norm()
}

/// Minimum-norm least-squares solution `B^dagger y`, computed by an
/// orthogonal factorization.
pub fn least_squares(b: &DenseMatrix, y: &DenseVector) -> Result<DenseVector, LinalgError> {
    if b.nrows() != y.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "matrix has {} rows, vector has length {}",
            b.nrows(),
            y.len()
        )));
    }
    if b.ncols() == 0 {
        return Ok(DenseVector::zeros(0));
    }
    let svd = b.clone().svd(true, true);
    let sigma_max = svd.singular_values[0];
    let sigma_min = svd.singular_values[svd.singular_values.len() - 1];
    if sigma_min <= TAU_RANK_REL * sigma_max {
        return Err(LinalgError::RankDeficient { sigma_min });
    }
    let sol = svd
        .solve(y, 0.0)
        .map_err(|_| LinalgError::RankDeficient { sigma_min })?;
    Ok(DenseVector::from_column_slice(sol.as_slice()))
}

/// Least squares that tolerates rank deficiency by truncating small
/// singular values (used by the exhaustive oracle, where arbitrary
/// column subsets may be singular).
pub fn least_squares_lenient(b: &DenseMatrix, y: &DenseVector) -> DenseVector {
    if b.ncols() == 0 {
        return DenseVector::zeros(0);
    }
    let svd = b.clone().svd(true, true);
    let eps = TAU_RANK_REL * svd.singular_values[0];
    match svd.solve(y, eps) {
        Ok(sol) => DenseVector::from_column_slice(sol.as_slice()),
        Err(_) => DenseVector::zeros(b.ncols()),
    }
}

/// Moore-Penrose pseudo-inverse of a full-column-rank matrix.
pub fn pseudo_inverse(b: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if b.ncols() == 0 {
        return Ok(DenseMatrix::zeros(0, b.nrows()));
    }
    let svd = b.clone().svd(true, true);
    let sigma_max = svd.singular_values[0];
    let sigma_min = svd.singular_values[svd.singular_values.len() - 1];
    if sigma_min <= TAU_RANK_REL * sigma_max {
        return Err(LinalgError::RankDeficient { sigma_min });
    }
    svd.pseudo_inverse(0.0)
        .map_err(|_| LinalgError::RankDeficient { sigma_min })
}

/// Extreme singular values of `B`.
pub fn spectral_extremes(b: &DenseMatrix) -> Result<SpectralExtremes, LinalgError> {
    if b.nrows() == 0 || b.ncols() == 0 {
        return Err(LinalgError::Empty);
    }
    let sv = b.clone().singular_values();
    Ok(SpectralExtremes {
        sigma_min: sv[sv.len() - 1],
        sigma_max: sv[0],
    })
}

/// Operator norm induced by the l1 vector norm: the maximum absolute
/// column sum.
pub fn induced_norm_1_1(a: &DenseMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Operator norm induced by the l-infinity vector norm: the maximum
/// absolute row sum. Dual companion of [`induced_norm_1_1`].
pub fn induced_norm_inf_inf(a: &DenseMatrix) -> f64 {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Columns of `h` indexed by `indices`, in the given order.
pub fn columns(h: &DenseMatrix, indices: &[usize]) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(h.nrows(), indices.len());
    for (c, &j) in indices.iter().enumerate() {
        out.set_column(c, &h.column(j));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, m, |_, _| StandardNormal.sample(rng))
    }

    #[test]
    fn complement_of_empty_is_identity() {
        let b = DenseMatrix::zeros(3, 0);
        let p = complement_projector(&b).unwrap();
        assert_eq!(p.matrix(), &DenseMatrix::identity(3, 3));
    }

    #[test]
    fn complement_of_axis_vector() {
        let b = DenseMatrix::from_column_slice(2, 1, &[1.0, 0.0]);
        let p = complement_projector(&b).unwrap();
        let expected = DenseMatrix::from_diagonal(&DenseVector::from_vec(vec![0.0, 1.0]));
        assert!((p.matrix() - expected).norm() < 1e-14);
    }

    #[test]
    fn complement_annihilates_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_matrix(&mut rng, 4, 2);
        let p = complement_projector(&b).unwrap();
        assert!((p.matrix() * &b).norm() <= 1e-10);
        assert!(p.idempotence_defect() <= TAU_PROJ);
    }

    #[test]
    fn rank_deficient_rejected() {
        let mut b = DenseMatrix::zeros(3, 2);
        b.set_column(0, &DenseVector::from_vec(vec![1.0, 1.0, 0.0]).column(0));
        b.set_column(1, &DenseVector::from_vec(vec![2.0, 2.0, 0.0]).column(0));
        assert!(matches!(
            complement_projector(&b),
            Err(LinalgError::RankDeficient { .. })
        ));
    }

    #[test]
    fn downdate_by_axis_vectors() {
        let p = Projector::identity(3);
        let e1 = DenseVector::from_vec(vec![1.0, 0.0, 0.0]);
        let p1 = projector_downdate(&p, &e1, default_downdate_tol(&e1)).unwrap();
        let d1 = DenseMatrix::from_diagonal(&DenseVector::from_vec(vec![0.0, 1.0, 1.0]));
        assert!((p1.matrix() - &d1).norm() < 1e-14);

        let e2 = DenseVector::from_vec(vec![0.0, 1.0, 0.0]);
        let p2 = projector_downdate(&p1, &e2, default_downdate_tol(&e2)).unwrap();
        let d2 = DenseMatrix::from_diagonal(&DenseVector::from_vec(vec![0.0, 0.0, 1.0]));
        assert!((p2.matrix() - &d2).norm() < 1e-14);
    }

    #[test]
    fn downdate_matches_batch_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = random_matrix(&mut rng, 6, 3);
        let mut p = Projector::identity(6);
        for j in 0..3 {
            let a = DenseVector::from_column_slice(b.column(j).as_slice());
            p = projector_downdate(&p, &a, default_downdate_tol(&a)).unwrap();
        }
        let batch = complement_projector(&b).unwrap();
        assert!((p.matrix() - batch.matrix()).norm() <= 1e-8);
    }

    #[test]
    fn downdate_degenerate_column() {
        let p = Projector::identity(2);
        let e1 = DenseVector::from_vec(vec![1.0, 0.0]);
        let p1 = projector_downdate(&p, &e1, default_downdate_tol(&e1)).unwrap();
        let err = projector_downdate(&p1, &e1, default_downdate_tol(&e1));
        assert!(matches!(err, Err(LinalgError::DegenerateColumn { .. })));
    }

    #[test]
    fn least_squares_identity() {
        let b = DenseMatrix::identity(2, 2);
        let y = DenseVector::from_vec(vec![3.0, 5.0]);
        let w = least_squares(&b, &y).unwrap();
        assert_relative_eq!(w[0], 3.0, max_relative = 1e-14);
        assert_relative_eq!(w[1], 5.0, max_relative = 1e-14);
    }

    #[test]
    fn least_squares_single_column() {
        let s = 1.0 / 2.0_f64.sqrt();
        let b = DenseMatrix::from_column_slice(2, 1, &[s, s]);
        let y = DenseVector::from_vec(vec![1.0, 0.0]);
        let w = least_squares(&b, &y).unwrap();
        assert_relative_eq!(w[0], s, max_relative = 1e-12);
    }

    #[test]
    fn least_squares_exact_fit() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = random_matrix(&mut rng, 8, 3);
        let w_true = DenseVector::from_vec(vec![1.0, -2.0, 0.5]);
        let y = &b * &w_true;
        let w = least_squares(&b, &y).unwrap();
        let residual = &y - &b * &w;
        assert!(residual.norm() <= 1e-10);
        // residual orthogonal to columns
        assert!((b.transpose() * residual).norm() <= 1e-10);
    }

    #[test]
    fn pseudo_inverse_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let b = random_matrix(&mut rng, 7, 4);
            let pinv = pseudo_inverse(&b).unwrap();
            let defect = &pinv * &b - DenseMatrix::identity(4, 4);
            assert!(defect.norm() <= 1e-8);
        }
    }

    #[test]
    fn spectral_extremes_identity_and_diagonal() {
        let se = spectral_extremes(&DenseMatrix::identity(3, 3)).unwrap();
        assert_relative_eq!(se.sigma_min, 1.0, max_relative = 1e-14);
        assert_relative_eq!(se.sigma_max, 1.0, max_relative = 1e-14);

        let mut b = DenseMatrix::zeros(3, 2);
        b[(0, 0)] = 2.0;
        b[(1, 1)] = 3.0;
        let se = spectral_extremes(&b).unwrap();
        assert_relative_eq!(se.sigma_min, 2.0, max_relative = 1e-14);
        assert_relative_eq!(se.sigma_max, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn singular_value_interlacing() {
        // sigma_min(H_i) >= sigma_min(C), sigma_max(H_i) <= sigma_max(C)
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let c = random_matrix(&mut rng, 10, 6);
            let h1 = c.columns(0, 3).into_owned();
            let h2 = c.columns(3, 3).into_owned();
            let sc = spectral_extremes(&c).unwrap();
            for h in [&h1, &h2] {
                let sh = spectral_extremes(h).unwrap();
                assert!(sh.sigma_min - sc.sigma_min >= -1e-10);
                assert!(sc.sigma_max - sh.sigma_max >= -1e-10);
            }
        }
    }

    #[test]
    fn induced_norm_values() {
        assert_relative_eq!(induced_norm_1_1(&DenseMatrix::identity(4, 4)), 1.0);
        let a = DenseMatrix::from_row_slice(2, 2, &[1.0, -2.0, 3.0, 0.0]);
        assert_relative_eq!(induced_norm_1_1(&a), 4.0);
        let s = 1.0 / 2.0_f64.sqrt();
        let col = DenseMatrix::from_column_slice(2, 1, &[s, s]);
        assert_relative_eq!(induced_norm_1_1(&col), 2.0_f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn norm_duality_under_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 5, 7);
            let n11 = induced_norm_1_1(&a);
            let ninf = induced_norm_inf_inf(&a.transpose());
            assert_relative_eq!(n11, ninf, max_relative = 1e-12);
        }
    }

    #[test]
    fn iterated_downdate_matches_batch_on_random_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = 4 + (rand::Rng::random_range(&mut rng, 0..7) as usize);
            let len = 1 + (rand::Rng::random_range(&mut rng, 0..std::cmp::min(n, 10)) as usize);
            let b = random_matrix(&mut rng, n, len);
            let mut p = Projector::identity(n);
            for j in 0..len {
                let a = DenseVector::from_column_slice(b.column(j).as_slice());
                p = projector_downdate(&p, &a, default_downdate_tol(&a)).unwrap();
            }
            let batch = complement_projector(&b).unwrap();
            assert!((p.matrix() - batch.matrix()).norm() <= 1e-8);
            assert!(p.idempotence_defect() <= 1e-8);
        }
    }
}
