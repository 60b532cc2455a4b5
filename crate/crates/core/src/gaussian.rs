//! Analytic Gaussian states: phase-space density values, coherent
//! wavefunctions, the KLM and Robertson–Schrödinger checks, and the
//! classification of a state as ħ′ varies.
//!
//! Coordinates are ordered (x_1..x_n, p_1..p_n) throughout, matching the
//! block form of the symplectic matrix J. ħ is a pure positive parameter;
//! only ratios ħ′/ħ enter the mathematics.

use serde::Serialize;
use thiserror::Error;

use crate::matcore::{self, eig_hermitian, is_psd, HermitianMatrix, Lu, RealMatrix};
use crate::symplectic::{self, standard_j, symplectic_eigenvalues};

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("wavepacket width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("hbar must be positive, got {0}")]
    NonPositiveHbar(f64),
    #[error("not a quantum state at hbar' = {hbar_prime} (KLM condition fails)")]
    NotAQuantumState { hbar_prime: f64 },
    #[error(transparent)]
    Symplectic(#[from] symplectic::SymplecticError),
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

/// Default PSD tolerance for the KLM test, relative to trace(Σ).
pub const KLM_PSD_TOL: f64 = 1e-10;

/// Relative band within which a symplectic eigenvalue counts as saturating
/// λ = ħ′/2.
pub const SATURATION_TOL: f64 = 1e-9;

/// Real symmetric 2n x 2n second-moment matrix with (xx, xp; px, pp) blocks.
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    matrix: RealMatrix,
    n: usize,
}

impl CovarianceMatrix {
    pub fn new(matrix: RealMatrix) -> Result<Self, GaussianError> {
        matrix.check_symmetric()?;
        let dim = matrix.rows();
        if dim % 2 != 0 {
            return Err(symplectic::SymplecticError::OddDimension(dim).into());
        }
        Ok(CovarianceMatrix { n: dim / 2, matrix })
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn as_matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    /// σ_{x_j, x_k}
    pub fn xx(&self, j: usize, k: usize) -> f64 {
        self.matrix[(j, k)]
    }

    /// σ_{x_j, p_k}
    pub fn xp(&self, j: usize, k: usize) -> f64 {
        self.matrix[(j, self.n + k)]
    }

    /// σ_{p_j, p_k}
    pub fn pp(&self, j: usize, k: usize) -> f64 {
        self.matrix[(self.n + j, self.n + k)]
    }
}

/// A generalized Gaussian state: mean z̄, covariance Σ (SPD), and the ħ it
/// was prepared with.
#[derive(Debug, Clone)]
pub struct GaussianState {
    n: usize,
    mean: Vec<f64>,
    sigma: CovarianceMatrix,
    hbar_ref: f64,
}

impl GaussianState {
    pub fn new(mean: Vec<f64>, sigma: CovarianceMatrix, hbar_ref: f64) -> Result<Self, GaussianError> {
        let n = sigma.modes();
        if mean.len() != 2 * n {
            return Err(GaussianError::DimensionMismatch { expected: 2 * n, got: mean.len() });
        }
        if mean.iter().any(|m| !m.is_finite()) {
            return Err(matcore::MatError::NonFinite.into());
        }
        if !(hbar_ref > 0.0) {
            return Err(GaussianError::NonPositiveHbar(hbar_ref));
        }
        // positive definiteness, with the same degeneracy threshold the
        // Williamson solver applies
        symplectic_eigenvalues(sigma.as_matrix())?;
        Ok(GaussianState { n, mean, sigma, hbar_ref })
    }

    /// Zero-mean state.
    pub fn centered(sigma: CovarianceMatrix, hbar_ref: f64) -> Result<Self, GaussianError> {
        let n = sigma.modes();
        Self::new(vec![0.0; 2 * n], sigma, hbar_ref)
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn sigma(&self) -> &CovarianceMatrix {
        &self.sigma
    }

    pub fn hbar_ref(&self) -> f64 {
        self.hbar_ref
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GaussianLabel {
    QuantumPure,
    QuantumMixed,
    ClassicalOnly,
    Invalid,
}

/// Outcome of classifying a Gaussian state against a candidate ħ′.
#[derive(Debug, Clone, Serialize)]
pub struct GaussianVerdict {
    pub label: GaussianLabel,
    pub lambda_min: f64,
    /// 2·λ_min: the largest ħ′ at which the state is still quantum.
    pub hbar_critical: f64,
    pub rsi_satisfied: Vec<bool>,
    pub saturated: bool,
}

/// Density value of the normalized Gaussian ρ_Σ at a phase-space point:
/// (2π)^{-n} √(det Σ⁻¹) exp(-½ (z-z̄)ᵀ Σ⁻¹ (z-z̄)).
pub fn gaussian_wigner(state: &GaussianState, z: &[f64]) -> Result<f64, GaussianError> {
    let dim = 2 * state.n;
    if z.len() != dim {
        return Err(GaussianError::DimensionMismatch { expected: dim, got: z.len() });
    }
    let d: Vec<f64> = z.iter().zip(state.mean()).map(|(a, b)| a - b).collect();
    let lu = Lu::new(state.sigma.as_matrix())?;
    let u = lu.solve(&d);
    let quad: f64 = d.iter().zip(&u).map(|(a, b)| a * b).sum();
    let det = lu.det();
    let norm = (2.0 * std::f64::consts::PI).powi(-(state.n as i32)) / det.sqrt();
    Ok(norm * (-0.5 * quad).exp())
}

/// Normalized coherent-state wavefunction with position spread σ_X:
/// ψ(x) = (2πσ_X²)^{-1/4} exp(-x²/4σ_X²). Its Wigner transform at ħ is the
/// Gaussian with σ_P = ħ/(2σ_X), saturating σ_X σ_P = ħ/2.
pub fn coherent_wavefunction(sigma_x: f64, x: f64) -> Result<f64, GaussianError> {
    if !(sigma_x > 0.0) {
        return Err(GaussianError::NonPositiveWidth(sigma_x));
    }
    let var = sigma_x * sigma_x;
    Ok((2.0 * std::f64::consts::PI * var).powf(-0.25) * (-x * x / (4.0 * var)).exp())
}

/// KLM condition at ħ′: Σ + (iħ′/2)J ⪰ 0, tested through the Hermitian
/// spectrum with tolerance scaled by trace(Σ).
pub fn klm_check(state: &GaussianState, hbar_prime: f64) -> Result<bool, GaussianError> {
    if !(hbar_prime > 0.0) {
        return Err(GaussianError::NonPositiveHbar(hbar_prime));
    }
    let j = standard_j(state.n)?;
    let im = j.matrix().scaled(0.5 * hbar_prime);
    let h = HermitianMatrix::new(state.sigma.as_matrix().clone(), im)?;
    let spec = eig_hermitian(&h)?;
    Ok(is_psd(&spec, state.sigma.as_matrix().trace(), KLM_PSD_TOL))
}

/// Per-mode Robertson–Schrödinger inequalities at ħ′:
/// σ_{x_j}² σ_{p_j}² ≥ σ_{x_j,p_j}² + ¼ ħ′².
pub fn rsi_check(state: &GaussianState, hbar_prime: f64) -> Vec<bool> {
    (0..state.n)
        .map(|j| {
            let lhs = state.sigma.xx(j, j) * state.sigma.pp(j, j);
            let rhs = state.sigma.xp(j, j).powi(2) + 0.25 * hbar_prime * hbar_prime;
            lhs - rhs >= -1e-12 * lhs.abs().max(rhs.abs()).max(1.0)
        })
        .collect()
}

/// Classifies a Gaussian state against ħ′ through its Williamson spectrum:
/// every λ_j = ħ′/2 (within band) is a pure quantum state, λ_min ≥ ħ′/2 a
/// mixed one, and anything below is a merely classical probability density.
pub fn classify_gaussian(
    state: &GaussianState,
    hbar_prime: f64,
) -> Result<GaussianVerdict, GaussianError> {
    if !(hbar_prime > 0.0) {
        return Err(GaussianError::NonPositiveHbar(hbar_prime));
    }
    let spectrum = symplectic_eigenvalues(state.sigma.as_matrix())?;
    let lambdas = spectrum.lambdas();
    let half = 0.5 * hbar_prime;
    let tol = SATURATION_TOL * hbar_prime;
    let saturated = lambdas.iter().all(|l| (l - half).abs() <= tol);
    let lambda_min = spectrum.min();
    let label = if saturated {
        GaussianLabel::QuantumPure
    } else if lambda_min >= half - tol {
        GaussianLabel::QuantumMixed
    } else {
        GaussianLabel::ClassicalOnly
    };
    Ok(GaussianVerdict {
        label,
        lambda_min,
        hbar_critical: 2.0 * lambda_min,
        rsi_satisfied: rsi_check(state, hbar_prime),
        saturated,
    })
}

/// The largest ħ′ for which the state remains a quantum state: 2·λ_min.
pub fn critical_hbar(state: &GaussianState) -> Result<f64, GaussianError> {
    Ok(2.0 * symplectic_eigenvalues(state.sigma.as_matrix())?.min())
}

/// Purity of the Gaussian state reinterpreted at ħ′:
/// (ħ′/2)^n / √(det Σ), valid only where the KLM condition holds.
pub fn gaussian_purity(state: &GaussianState, hbar_prime: f64) -> Result<f64, GaussianError> {
    if !klm_check(state, hbar_prime)? {
        return Err(GaussianError::NotAQuantumState { hbar_prime });
    }
    let det = matcore::det(state.sigma.as_matrix())?;
    let purity = (0.5 * hbar_prime).powi(state.n as i32) / det.sqrt();
    Ok(purity.min(1.0))
}
