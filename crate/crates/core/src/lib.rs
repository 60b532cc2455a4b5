//! Decides whether a phase-space function (a parametrized Gaussian or a
//! sampled Wigner grid) is the Wigner distribution of a quantum state for a
//! given value ħ′ of Planck's constant, and classifies how the verdict
//! changes (pure / mixed / classical / not a state) as ħ′ varies.
//!
//! Module map:
//! - [`matcore`]: dense symmetric/Hermitian eigensolvers, PSD tests, SPD
//!   matrix functions.
//! - [`symplectic`]: the standard form J, Williamson spectra, random
//!   symplectic matrices.
//! - [`gaussian`]: analytic Gaussian states, KLM/RSI checks, ħ′
//!   classification, critical ħ, purity.
//! - [`wignergrid`]: discretized wavefunctions, the FFT Wigner transform,
//!   mixtures, marginals, moment estimation.
//! - [`verifier`]: kernel reconstruction at ħ′, operator spectra, verdicts,
//!   ħ′ scans, and the finite-sample positivity tester.

pub mod gaussian;
pub mod matcore;
pub mod symplectic;
pub mod verifier;
pub mod wignergrid;

pub use gaussian::{
    classify_gaussian, coherent_wavefunction, critical_hbar, gaussian_purity, gaussian_wigner,
    klm_check, rsi_check, CovarianceMatrix, GaussianError, GaussianLabel, GaussianState,
    GaussianVerdict,
};
pub use matcore::{
    det, eig_hermitian, eig_symmetric, is_psd, sqrt_spd, HermitianMatrix, MatError, RealMatrix,
    SpectrumResult,
};
pub use symplectic::{
    random_symplectic, standard_j, symplectic_eigenvalues, SymplecticError, SymplecticForm,
    WilliamsonSpectrum,
};
pub use verifier::{
    klm_finite_sample, operator_spectrum, reconstruct_kernel, scan_hbar, verify_state,
    HbarScanReport, OperatorKernel, StateLabel, StateVerdict, VerifyError, DEFAULT_PSD_TOL,
};
pub use wignergrid::{
    covariance_from_grid, hermite_wavefunction, marginals, mixture_wigner, wigner_transform,
    GridError, GridWavefunction, MixtureEnsemble, PositionGrid, WignerGrid,
};
