//! The standard symplectic form, symplectic eigenvalues (Williamson spectrum)
//! of covariance matrices, and seeded random symplectic matrices for
//! property testing.
//!
//! The spectrum is computed along two independent routes and cross-checked:
//! disagreement is a hard error, because every downstream classification
//! hangs off λ_min.

use thiserror::Error;

use crate::matcore::{
    self, eig_hermitian, eig_symmetric, eig_symmetric_values, spd_function, HermitianMatrix,
    RealMatrix,
};

#[derive(Debug, Error)]
pub enum SymplecticError {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("matrix dimension {0} is odd; covariance matrices are 2n x 2n")]
    OddDimension(usize),
    #[error("matrix is not symmetric positive definite: {0}")]
    NotSpd(String),
    #[error("symplectic eigenvalue routes disagree at index {index}: {a} vs {b}")]
    CrossCheckMismatch { index: usize, a: f64, b: f64 },
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

/// Tolerance for the dual-route agreement check.
pub const CROSS_CHECK_TOL: f64 = 1e-10;

/// Relative threshold below which a covariance matrix counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// The 2n x 2n matrix J = [[0, I], [-I, 0]] in (x_1..x_n, p_1..p_n) ordering.
#[derive(Debug, Clone)]
pub struct SymplecticForm {
    n: usize,
    matrix: RealMatrix,
}

impl SymplecticForm {
    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }
}

/// Builds the standard symplectic form for n modes.
pub fn standard_j(n: usize) -> Result<SymplecticForm, SymplecticError> {
    if n == 0 {
        return Err(SymplecticError::ZeroModes);
    }
    let mut m = RealMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        m[(j, n + j)] = 1.0;
        m[(n + j, j)] = -1.0;
    }
    Ok(SymplecticForm { n, matrix: m })
}

/// Williamson spectrum: the positive numbers λ_1 ≤ … ≤ λ_n such that ±iλ_j
/// are the eigenvalues of JΣ.
#[derive(Debug, Clone)]
pub struct WilliamsonSpectrum {
    lambdas: Vec<f64>,
}

impl WilliamsonSpectrum {
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn min(&self) -> f64 {
        self.lambdas[0]
    }
}

fn check_spd(sigma: &RealMatrix) -> Result<crate::matcore::SpectrumResult, SymplecticError> {
    sigma
        .check_symmetric()
        .map_err(|e| SymplecticError::NotSpd(e.to_string()))?;
    let dim = sigma.rows();
    if dim % 2 != 0 {
        return Err(SymplecticError::OddDimension(dim));
    }
    let spec = eig_symmetric(sigma)?;
    let scale = sigma.trace().max(f64::MIN_POSITIVE);
    if spec.min_eigenvalue() <= DEGENERACY_TOL * scale {
        return Err(SymplecticError::NotSpd(format!(
            "smallest eigenvalue {:.3e} is below the degeneracy threshold",
            spec.min_eigenvalue()
        )));
    }
    Ok(spec)
}

/// Symplectic eigenvalues of an SPD covariance matrix, ascending.
///
/// Route (a): the moduli of the eigenvalues of the antisymmetric
/// A = Σ^{1/2} J Σ^{1/2}, obtained from the Hermitian matrix iA (re = 0,
/// im = A). Route (b): positive square roots of the spectrum of AᵀA, which is
/// similar to -(JΣ)². The two must agree to `CROSS_CHECK_TOL`.
pub fn symplectic_eigenvalues(sigma: &RealMatrix) -> Result<WilliamsonSpectrum, SymplecticError> {
    let spec = check_spd(sigma)?;
    let dim = sigma.rows();
    let n = dim / 2;
    let sqrt_sigma = spd_function(&spec, f64::sqrt);
    let j = standard_j(n)?;
    let a = sqrt_sigma.matmul(j.matrix()).matmul(&sqrt_sigma);

    // route (a)
    let h = HermitianMatrix::new(RealMatrix::zeros(dim, dim), a.clone())?;
    let ia_vals = eig_hermitian(&h)?.eigenvalues; // ±λ_j, ascending
    let route_a: Vec<f64> = ia_vals[n..].to_vec();

    // route (b)
    let g = a.transpose().matmul(&a); // exactly symmetric
    let g_vals = eig_symmetric_values(&g)?; // λ_j² doubled, ascending
    let route_b: Vec<f64> = (0..n)
        .map(|i| (0.5 * (g_vals[2 * i] + g_vals[2 * i + 1])).max(0.0).sqrt())
        .collect();

    for (i, (&la, &lb)) in route_a.iter().zip(&route_b).enumerate() {
        if (la - lb).abs() > CROSS_CHECK_TOL * la.abs().max(1.0) {
            return Err(SymplecticError::CrossCheckMismatch { index: i, a: la, b: lb });
        }
    }
    Ok(WilliamsonSpectrum { lambdas: route_a })
}

/// Deterministic random symplectic matrix: a product of exact generators
/// (single-mode rotations, squeezes, shears, and paired two-mode Givens
/// mixes) drawn from a seeded ChaCha stream.
pub fn random_symplectic(n: usize, seed: u64) -> RealMatrix {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    assert!(n >= 1, "mode count must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 2 * n;
    let mut s = RealMatrix::identity(dim);

    let mode_rotation = |j: usize, theta: f64| {
        let (sin, cos) = theta.sin_cos();
        let mut m = RealMatrix::identity(dim);
        m[(j, j)] = cos;
        m[(j, n + j)] = sin;
        m[(n + j, j)] = -sin;
        m[(n + j, n + j)] = cos;
        m
    };
    let squeeze = |j: usize, r: f64| {
        let mut m = RealMatrix::identity(dim);
        m[(j, j)] = r.exp();
        m[(n + j, n + j)] = (-r).exp();
        m
    };
    let shear = |j: usize, a: f64| {
        let mut m = RealMatrix::identity(dim);
        m[(n + j, j)] = a;
        m
    };
    let pair_mix = |j: usize, k: usize, theta: f64| {
        let (sin, cos) = theta.sin_cos();
        let mut m = RealMatrix::identity(dim);
        for &(r, c) in &[(j, k), (n + j, n + k)] {
            m[(r, r)] = cos;
            m[(r, c)] = sin;
            m[(c, r)] = -sin;
            m[(c, c)] = cos;
        }
        m
    };

    for _ in 0..3 {
        for j in 0..n {
            s = mode_rotation(j, rng.gen_range(0.0..std::f64::consts::TAU)).matmul(&s);
            s = squeeze(j, rng.gen_range(-0.7..0.7)).matmul(&s);
            s = shear(j, rng.gen_range(-1.0..1.0)).matmul(&s);
        }
        for j in 0..n {
            for k in j + 1..n {
                s = pair_mix(j, k, rng.gen_range(0.0..std::f64::consts::TAU)).matmul(&s);
            }
        }
    }
    s
}
