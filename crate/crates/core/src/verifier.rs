//! Decides whether a sampled phase-space function is the Wigner distribution
//! of a quantum state once ħ is reinterpreted as ħ′: rebuilds the candidate
//! position kernel ⟨x|ρ̂|x′⟩, inspects its spectrum, and scans over ħ′.
//!
//! The kernel lives on the even sublattice {x_0, x_2, ...} (spacing 2Δx,
//! N/2 points): those are exactly the (x+y/2, x-y/2) pairs whose midpoint
//! falls on a grid node, so every entry is representable without
//! interpolation. Entries with |y| beyond half the aliasing period
//! 4L·ħ′/ħ of the momentum sum are zeroed; the true kernel there is smaller
//! than the alias images for every state that fits the grid.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matcore::{self, eig_hermitian, is_psd, HermitianMatrix, RealMatrix};
use crate::wignergrid::{GridError, PositionGrid, WignerGrid};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("hbar' must be positive, got {0}")]
    BadHbar(f64),
    #[error("grid too coarse for kernel reconstruction: {0} points (need >= 32)")]
    GridTooCoarse(usize),
    #[error("reconstructed kernel is not Hermitian: residual {residual:.3e} exceeds {tol:.1e}")]
    HermiticityViolation { residual: f64, tol: f64 },
    #[error("spectral purity {spectral} and phase-space purity {phase_space} disagree beyond 1e-5")]
    PurityCrossCheckMismatch { spectral: f64, phase_space: f64 },
    #[error("scan values must be ascending and positive")]
    BadScanValues,
    #[error("phase-space point ({x}, {p}) lies outside the grid box")]
    PointOutOfBox { x: f64, p: f64 },
    #[error("finite-sample KLM tester accepts at most 64 points, got {0}")]
    TooManyPoints(usize),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

/// Default PSD threshold (relative to the trace) separating genuine
/// negativity from discretization noise; stable for the coherent-state
/// golden cases at N = 256.
pub const DEFAULT_PSD_TOL: f64 = 1e-8;

/// Relative tolerance for the two-route purity agreement.
pub const PURITY_CROSS_TOL: f64 = 1e-5;

const KERNEL_HERMITICITY_TOL: f64 = 1e-8;

/// Candidate position kernel K(x, x′) = ⟨x|ρ̂|x′⟩ on the even sublattice of
/// the source grid, reconstructed at ħ′.
#[derive(Debug, Clone)]
pub struct OperatorKernel {
    grid: PositionGrid,
    k: Vec<Complex64>,
    hbar_prime: f64,
}

impl OperatorKernel {
    pub fn grid(&self) -> &PositionGrid {
        &self.grid
    }

    pub fn hbar_prime(&self) -> f64 {
        self.hbar_prime
    }

    pub fn value(&self, r: usize, s: usize) -> Complex64 {
        self.k[r * self.grid.len() + s]
    }

    /// The y = 0 slice: K(x_r, x_r), the position density on the sublattice.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|r| self.value(r, r).re).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateLabel {
    Pure,
    Mixed,
    NotAState,
}

/// Spectral precursor of a verdict: eigenvalues (ascending) of K·Δx and the
/// discrete trace.
#[derive(Debug, Clone)]
pub struct OperatorSpectrum {
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
}

/// Classification of one candidate ħ′.
#[derive(Debug, Clone, Serialize)]
pub struct StateVerdict {
    pub hbar_prime: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
    /// Σλ² / (Σ|λ|)²: equals tr ρ̂² for positive spectra and stays in (0, 1]
    /// for indefinite reconstructions.
    pub purity: f64,
    pub label: StateLabel,
    /// Kernel eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelTransition {
    pub hbar_before: f64,
    pub hbar_after: f64,
    pub from: StateLabel,
    pub to: StateLabel,
}

/// Verdicts ordered by ħ′ plus the detected label transitions.
#[derive(Debug, Clone, Serialize)]
pub struct HbarScanReport {
    pub reference_hbar: f64,
    pub verdicts: Vec<StateVerdict>,
    pub transitions: Vec<LabelTransition>,
}

impl HbarScanReport {
    /// Evidence rows for the decrease-of-ħ conjecture: (ħ′, was PSD) for
    /// every scanned ħ′ below the grid's reference ħ. Reported, never
    /// asserted.
    pub fn decrease_evidence(&self) -> Vec<(f64, bool)> {
        self.verdicts
            .iter()
            .filter(|v| v.hbar_prime < self.reference_hbar)
            .map(|v| (v.hbar_prime, v.label != StateLabel::NotAState))
            .collect()
    }
}

/// Inverts the Wigner transform at ħ′:
/// K(x + y/2, x - y/2) = Σ_k w[x, p_k] e^{+i p_k y/ħ′} Δp
/// on the even sublattice, with both index orders computed independently,
/// residual-checked, then symmetrized.
pub fn reconstruct_kernel(w: &WignerGrid, hbar_prime: f64) -> Result<OperatorKernel, VerifyError> {
    if !(hbar_prime > 0.0) {
        return Err(VerifyError::BadHbar(hbar_prime));
    }
    w.validate()?;
    let n = w.xgrid().len();
    if n < 32 {
        return Err(VerifyError::GridTooCoarse(n));
    }
    let m = n / 2;
    let sub_grid = PositionGrid::new(w.xgrid().half_width(), m)?;
    let dx = w.xgrid().spacing();
    let dp = w.p_spacing();
    let y_band = 2.0 * w.xgrid().half_width() * hbar_prime / w.hbar();

    let p = w.pvalues();
    let kernel: Vec<Complex64> = (0..m)
        .into_par_iter()
        .flat_map_iter(|r| {
            (0..m).map(move |s| (r, s))
        })
        .map(|(r, s)| {
            let y = 2.0 * (r as f64 - s as f64) * dx;
            if y.abs() > y_band {
                return Complex64::new(0.0, 0.0);
            }
            let row = w.row(r + s);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &wv) in row.iter().enumerate() {
                let theta = p[k] * y / hbar_prime;
                let (sin, cos) = theta.sin_cos();
                acc += Complex64::new(wv * cos, wv * sin);
            }
            acc * dp
        })
        .collect();

    let mut max_abs = 0.0f64;
    let mut residual = 0.0f64;
    for r in 0..m {
        for s in 0..m {
            let a = kernel[r * m + s];
            max_abs = max_abs.max(a.norm());
            residual = residual.max((a - kernel[s * m + r].conj()).norm());
        }
    }
    let tol = KERNEL_HERMITICITY_TOL * max_abs.max(1.0);
    if residual > tol {
        return Err(VerifyError::HermiticityViolation { residual, tol });
    }
    let mut k = vec![Complex64::new(0.0, 0.0); m * m];
    for r in 0..m {
        for s in 0..m {
            k[r * m + s] = 0.5 * (kernel[r * m + s] + kernel[s * m + r].conj());
        }
    }
    Ok(OperatorKernel { grid: sub_grid, k, hbar_prime })
}

/// Spectrum of the discrete trace-class surrogate K·Δx.
pub fn operator_spectrum(kernel: &OperatorKernel) -> Result<OperatorSpectrum, VerifyError> {
    let m = kernel.grid.len();
    let dxk = kernel.grid.spacing();
    let re = RealMatrix::from_fn(m, m, |r, s| kernel.value(r, s).re * dxk);
    let im = RealMatrix::from_fn(m, m, |r, s| kernel.value(r, s).im * dxk);
    let h = HermitianMatrix::new(re, im)?;
    let spec = eig_hermitian(&h)?;
    let trace = (0..m).map(|r| kernel.value(r, r).re).sum::<f64>() * dxk;
    Ok(OperatorSpectrum { eigenvalues: spec.eigenvalues, trace })
}

/// Full verdict at one ħ′: positivity, trace, and purity cross-checked
/// between the spectral route and the phase-space integral (2πħ′)∫W².
pub fn verify_state(
    w: &WignerGrid,
    hbar_prime: f64,
    tol: f64,
) -> Result<StateVerdict, VerifyError> {
    let kernel = reconstruct_kernel(w, hbar_prime)?;
    let spec = operator_spectrum(&kernel)?;
    let min_eigenvalue = spec.eigenvalues[0];
    let spectral: f64 = spec.eigenvalues.iter().map(|l| l * l).sum();
    let phase_space = 2.0 * std::f64::consts::PI * hbar_prime * w.l2_mass();
    if (spectral - phase_space).abs() > PURITY_CROSS_TOL * spectral.abs().max(1.0) {
        return Err(VerifyError::PurityCrossCheckMismatch { spectral, phase_space });
    }
    let trace_norm: f64 = spec.eigenvalues.iter().map(|l| l.abs()).sum();
    let purity = spectral / (trace_norm * trace_norm);
    let threshold = tol * spec.trace.abs().max(1.0);
    let label = if min_eigenvalue < -threshold {
        StateLabel::NotAState
    } else if purity >= 1.0 - 1e-6 {
        StateLabel::Pure
    } else {
        StateLabel::Mixed
    };
    let mut descending = spec.eigenvalues.clone();
    descending.reverse();
    Ok(StateVerdict {
        hbar_prime,
        trace: spec.trace,
        min_eigenvalue,
        purity,
        label,
        eigenvalues: descending,
    })
}

/// Verdict per candidate ħ′ (ascending), with label transitions recorded.
/// The per-value verdicts are independent and run in parallel.
pub fn scan_hbar(
    w: &WignerGrid,
    hbar_values: &[f64],
    tol: f64,
) -> Result<HbarScanReport, VerifyError> {
    if hbar_values.windows(2).any(|v| v[1] <= v[0]) || hbar_values.iter().any(|&h| h <= 0.0) {
        return Err(VerifyError::BadScanValues);
    }
    let verdicts: Vec<StateVerdict> = hbar_values
        .par_iter()
        .map(|&hp| verify_state(w, hp, tol))
        .collect::<Result<_, _>>()?;
    let transitions = verdicts
        .windows(2)
        .filter(|pair| pair[0].label != pair[1].label)
        .map(|pair| LabelTransition {
            hbar_before: pair[0].hbar_prime,
            hbar_after: pair[1].hbar_prime,
            from: pair[0].label,
            to: pair[1].label,
        })
        .collect();
    Ok(HbarScanReport { reference_hbar: w.hbar(), verdicts, transitions })
}

/// Necessary finite-subset condition for ħ′-positive type: the matrix
/// M_jk = Λ(z_j - z_k) e^{-i σ(z_j, z_k)/(2ħ′)} must be PSD, where Λ is the
/// symplectic Fourier transform of w (Riemann sum) and σ(z, z′) = p·x′ - x·p′.
/// The phase convention is the one frozen by the Gaussian ground-truth tests.
pub fn klm_finite_sample(
    w: &WignerGrid,
    hbar_prime: f64,
    points: &[(f64, f64)],
) -> Result<bool, VerifyError> {
    if !(hbar_prime > 0.0) {
        return Err(VerifyError::BadHbar(hbar_prime));
    }
    if points.len() > 64 {
        return Err(VerifyError::TooManyPoints(points.len()));
    }
    let l = w.xgrid().half_width();
    let p_max = w.pvalues().last().copied().unwrap().abs().max(w.pvalues()[0].abs());
    for &(x, p) in points {
        // negated form so non-finite coordinates are rejected too
        if !(x.abs() <= l && p.abs() <= p_max) {
            return Err(VerifyError::PointOutOfBox { x, p });
        }
    }
    if points.is_empty() {
        return Ok(true);
    }

    let n = w.xgrid().len();
    let dx = w.xgrid().spacing();
    let dp = w.p_spacing();
    let cell = dx * dp;
    let pg = w.pvalues();
    // Λ(z) = ΣΣ w_jk e^{-i(p·x_j - x·p_k)/ħ′} ΔxΔp, with the two phase
    // factors separated so each evaluation costs O(N²) with O(N) trig.
    let lam = |z: (f64, f64)| -> Complex64 {
        let col_phase: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, z.0 * pg[k] / hbar_prime))
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let mut row_acc = Complex64::new(0.0, 0.0);
            for (k, &wv) in w.row(j).iter().enumerate() {
                row_acc += wv * col_phase[k];
            }
            let xj = w.xgrid().point(j);
            acc += row_acc * Complex64::from_polar(1.0, -z.1 * xj / hbar_prime);
        }
        acc * cell
    };

    let m = points.len();
    use std::collections::HashMap;
    let mut cache: HashMap<(u64, u64), Complex64> = HashMap::new();
    let mut re = RealMatrix::zeros(m, m);
    let mut im = RealMatrix::zeros(m, m);
    for j in 0..m {
        for k in j..m {
            let d = (points[j].0 - points[k].0, points[j].1 - points[k].1);
            let key = (d.0.to_bits(), d.1.to_bits());
            let lv = *cache.entry(key).or_insert_with(|| lam(d));
            let sig = points[j].1 * points[k].0 - points[j].0 * points[k].1;
            let entry = lv * Complex64::from_polar(1.0, -sig / (2.0 * hbar_prime));
            re[(j, k)] = entry.re;
            im[(j, k)] = entry.im;
            re[(k, j)] = entry.re;
            im[(k, j)] = -entry.im;
        }
    }
    for j in 0..m {
        im[(j, j)] = 0.0;
    }
    let h = HermitianMatrix::new(re, im)?;
    let spec = eig_hermitian(&h)?;
    let trace: f64 = (0..m).map(|j| h.re()[(j, j)]).sum();
    Ok(is_psd(&spec, trace, 1e-10))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::coherent_wavefunction;
    use crate::wignergrid::{hermite_wavefunction, marginals, wigner_transform, GridWavefunction};
    use num_complex::Complex64;

    const SIGMA2: f64 = 0.5;

    fn grid(n: usize) -> PositionGrid {
        PositionGrid::new(12.0, n).unwrap()
    }

    fn coherent_grid(n: usize) -> WignerGrid {
        let sx = SIGMA2.sqrt();
        let psi = GridWavefunction::sample(grid(n), 1.0, |x| {
            Complex64::new(coherent_wavefunction(sx, x).unwrap(), 0.0)
        })
        .unwrap();
        wigner_transform(&psi).unwrap()
    }

    #[test]
    fn round_trip_reproduces_rank_one_kernel() {
        let n = 128;
        let sx = SIGMA2.sqrt();
        let psi = GridWavefunction::sample(grid(n), 1.0, |x| {
            Complex64::new(coherent_wavefunction(sx, x).unwrap(), 0.0)
        })
        .unwrap();
        let w = wigner_transform(&psi).unwrap();
        let kernel = reconstruct_kernel(&w, 1.0).unwrap();
        let mut err = 0.0f64;
        for r in 0..n / 2 {
            for s in 0..n / 2 {
                let want = psi.values()[2 * r] * psi.values()[2 * s].conj();
                err = err.max((kernel.value(r, s) - want).norm());
            }
        }
        assert!(err < 1e-8, "round-trip error {err}");
    }

    #[test]
    fn round_trip_hermite_states() {
        let n = 128;
        for k in 1..=3usize {
            let psi = hermite_wavefunction(k, SIGMA2.sqrt(), &grid(n), 1.0).unwrap();
            let w = wigner_transform(&psi).unwrap();
            let kernel = reconstruct_kernel(&w, 1.0).unwrap();
            let mut err = 0.0f64;
            for r in 0..n / 2 {
                for s in 0..n / 2 {
                    let want = psi.values()[2 * r] * psi.values()[2 * s].conj();
                    err = err.max((kernel.value(r, s) - want).norm());
                }
            }
            assert!(err < 1e-6, "k={k} round-trip error {err}");
        }
    }

    #[test]
    fn kernel_diagonal_is_position_marginal() {
        let w = coherent_grid(128);
        let kernel = reconstruct_kernel(&w, 1.0).unwrap();
        let (pos, _) = marginals(&w);
        for (r, d) in kernel.diagonal().iter().enumerate() {
            assert!((d - pos[2 * r]).abs() < 1e-8, "diagonal vs marginal at {r}");
        }
    }

    #[test]
    fn mixture_kernel_is_weighted_sum() {
        let n = 128;
        let sx = SIGMA2.sqrt();
        let h0 = hermite_wavefunction(0, sx, &grid(n), 1.0).unwrap();
        let h1 = hermite_wavefunction(1, sx, &grid(n), 1.0).unwrap();
        let ens = crate::wignergrid::MixtureEnsemble::new(vec![
            (0.25, h0.clone()),
            (0.75, h1.clone()),
        ])
        .unwrap();
        let w = crate::wignergrid::mixture_wigner(&ens).unwrap();
        let kernel = reconstruct_kernel(&w, 1.0).unwrap();
        let mut err = 0.0f64;
        for r in 0..n / 2 {
            for s in 0..n / 2 {
                let want = 0.25 * h0.values()[2 * r] * h0.values()[2 * s].conj()
                    + 0.75 * h1.values()[2 * r] * h1.values()[2 * s].conj();
                err = err.max((kernel.value(r, s) - want).norm());
            }
        }
        assert!(err < 1e-8, "mixture kernel error {err}");
    }

    #[test]
    fn spectrum_of_pure_and_mixed_states() {
        let w = coherent_grid(128);
        let spec = operator_spectrum(&reconstruct_kernel(&w, 1.0).unwrap()).unwrap();
        let top = *spec.eigenvalues.last().unwrap();
        assert!((top - 1.0).abs() < 1e-6);
        assert!((spec.trace - 1.0).abs() < 1e-6);
        // eigenvalue sum equals trace
        let sum: f64 = spec.eigenvalues.iter().sum();
        assert!((sum - spec.trace).abs() < 1e-8);

        let sx = SIGMA2.sqrt();
        let h0 = hermite_wavefunction(0, sx, &grid(128), 1.0).unwrap();
        let h1 = hermite_wavefunction(1, sx, &grid(128), 1.0).unwrap();
        let ens =
            crate::wignergrid::MixtureEnsemble::new(vec![(0.5, h0), (0.5, h1)]).unwrap();
        let w = crate::wignergrid::mixture_wigner(&ens).unwrap();
        let spec = operator_spectrum(&reconstruct_kernel(&w, 1.0).unwrap()).unwrap();
        let m = spec.eigenvalues.len();
        assert!((spec.eigenvalues[m - 1] - 0.5).abs() < 1e-3);
        assert!((spec.eigenvalues[m - 2] - 0.5).abs() < 1e-3);
    }

    #[test]
    fn coherent_trichotomy_labels() {
        let w = coherent_grid(128);
        let v = verify_state(&w, 1.0, DEFAULT_PSD_TOL).unwrap();
        assert_eq!(v.label, StateLabel::Pure);
        assert!((v.purity - 1.0).abs() < 1e-6);
        assert!(v.min_eigenvalue >= -1e-8);

        let v = verify_state(&w, 0.5, DEFAULT_PSD_TOL).unwrap();
        assert_eq!(v.label, StateLabel::Mixed);
        assert!((v.purity - 0.5).abs() < 1e-3);

        let v = verify_state(&w, 1.5, DEFAULT_PSD_TOL).unwrap();
        assert_eq!(v.label, StateLabel::NotAState);
        // analytic spectrum at hbar'=1.5: (6/5)(-1/5)^k, min eigenvalue -6/25
        assert!((v.min_eigenvalue + 0.24).abs() < 1e-6, "min {}", v.min_eigenvalue);
        assert!((v.eigenvalues[0] - 1.2).abs() < 1e-6);
    }

    #[test]
    fn mixed_thermal_ladder_at_half_hbar() {
        // coherent state reinterpreted at hbar' = 0.5: eigenvalues (2/3)(1/3)^k
        let w = coherent_grid(128);
        let v = verify_state(&w, 0.5, DEFAULT_PSD_TOL).unwrap();
        for (k, want) in [(0usize, 2.0 / 3.0), (1, 2.0 / 9.0), (2, 2.0 / 27.0)] {
            assert!(
                (v.eigenvalues[k] - want).abs() < 1e-6,
                "ladder level {k}: {} vs {want}",
                v.eigenvalues[k]
            );
        }
    }

    #[test]
    fn boosted_state_exercises_complex_kernel() {
        // e^{ip₀x/ħ}ψ(x) has a genuinely complex kernel; still pure at ħ′=ħ
        let n = 128;
        let sx = SIGMA2.sqrt();
        let p0 = 1.0;
        let psi = GridWavefunction::sample(grid(n), 1.0, |x| {
            Complex64::from_polar(coherent_wavefunction(sx, x).unwrap(), p0 * x)
        })
        .unwrap();
        let w = wigner_transform(&psi).unwrap();
        let kernel = reconstruct_kernel(&w, 1.0).unwrap();
        let mut max_im = 0.0f64;
        for r in 0..n / 2 {
            for s in 0..n / 2 {
                max_im = max_im.max(kernel.value(r, s).im.abs());
            }
        }
        assert!(max_im > 1e-3, "kernel should be complex, max im {max_im}");
        let v = verify_state(&w, 1.0, DEFAULT_PSD_TOL).unwrap();
        assert_eq!(v.label, StateLabel::Pure);
        assert!((v.purity - 1.0).abs() < 1e-6);
    }

    #[test]
    fn scan_records_transitions_and_evidence() {
        let w = coherent_grid(128);
        let report = scan_hbar(&w, &[0.5, 1.0, 1.5], DEFAULT_PSD_TOL).unwrap();
        let labels: Vec<StateLabel> = report.verdicts.iter().map(|v| v.label).collect();
        assert_eq!(labels, vec![StateLabel::Mixed, StateLabel::Pure, StateLabel::NotAState]);
        assert_eq!(report.transitions.len(), 2);
        assert_eq!(report.transitions[1].to, StateLabel::NotAState);
        let evidence = report.decrease_evidence();
        assert_eq!(evidence, vec![(0.5, true)]);

        let empty = scan_hbar(&w, &[], DEFAULT_PSD_TOL).unwrap();
        assert!(empty.verdicts.is_empty() && empty.transitions.is_empty());

        assert!(matches!(
            scan_hbar(&w, &[1.0, 0.5], DEFAULT_PSD_TOL),
            Err(VerifyError::BadScanValues)
        ));
    }

    #[test]
    fn hermite1_pure_only_at_reference_hbar() {
        let psi = hermite_wavefunction(1, SIGMA2.sqrt(), &grid(128), 1.0).unwrap();
        let w = wigner_transform(&psi).unwrap();
        let v = verify_state(&w, 1.0, DEFAULT_PSD_TOL).unwrap();
        assert_eq!(v.label, StateLabel::Pure);
        for hp in [0.9, 1.1] {
            let v = verify_state(&w, hp, DEFAULT_PSD_TOL).unwrap();
            assert!(v.purity < 0.999, "purity {} at hbar'={hp}", v.purity);
            assert_ne!(v.label, StateLabel::Pure);
        }
    }

    #[test]
    fn klm_finite_sample_gaussian_ground_truth() {
        let w = coherent_grid(128);
        // single point at the origin: Λ(0) = ∫w = 1 ≥ 0
        assert!(klm_finite_sample(&w, 1.0, &[(0.0, 0.0)]).unwrap());

        let mut cross = vec![(0.0, 0.0)];
        for a in [0.5, 1.0, 1.5, 2.0] {
            cross.extend_from_slice(&[(a, 0.0), (-a, 0.0), (0.0, a), (0.0, -a)]);
        }
        // valid at hbar' <= 1, violated above
        assert!(klm_finite_sample(&w, 0.8, &cross).unwrap());
        assert!(klm_finite_sample(&w, 1.0, &cross).unwrap());
        assert!(!klm_finite_sample(&w, 1.5, &cross).unwrap());

        // out-of-box and oversized point sets are rejected
        assert!(matches!(
            klm_finite_sample(&w, 1.0, &[(100.0, 0.0)]),
            Err(VerifyError::PointOutOfBox { .. })
        ));
        let many = vec![(0.0, 0.0); 65];
        assert!(matches!(
            klm_finite_sample(&w, 1.0, &many),
            Err(VerifyError::TooManyPoints(65))
        ));
    }

    #[test]
    fn klm_phase_convention_distinguished_by_wide_gaussian() {
        // Σ = I has critical ħ = 2: the tester must stay PSD at ħ′ = 1.5
        // (the ħ′/2-phase variant fails here).
        let xg = grid(128);
        let w = WignerGrid::sample(xg, 1.0, |x, p| {
            (1.0 / (2.0 * std::f64::consts::PI)) * (-(x * x + p * p) / 2.0).exp()
        })
        .unwrap();
        let mut cross = vec![(0.0, 0.0)];
        for a in [0.5, 1.0, 1.5, 2.0] {
            cross.extend_from_slice(&[(a, 0.0), (-a, 0.0), (0.0, a), (0.0, -a)]);
        }
        assert!(klm_finite_sample(&w, 1.5, &cross).unwrap());
        assert!(klm_finite_sample(&w, 2.0, &cross).unwrap());
        assert!(!klm_finite_sample(&w, 2.5, &cross).unwrap());
    }
}
