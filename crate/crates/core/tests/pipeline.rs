//! Cross-module invariants: the analytic Gaussian pipeline and the sampled
//! grid pipeline must agree wherever both apply.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hbarscan_core::gaussian::GaussianLabel;
use hbarscan_core::verifier::StateLabel;
use hbarscan_core::*;

fn grid() -> PositionGrid {
    PositionGrid::new(12.0, 256).unwrap()
}

fn expected_state_label(g: GaussianLabel) -> StateLabel {
    match g {
        GaussianLabel::QuantumPure => StateLabel::Pure,
        GaussianLabel::QuantumMixed => StateLabel::Mixed,
        GaussianLabel::ClassicalOnly => StateLabel::NotAState,
        GaussianLabel::Invalid => unreachable!(),
    }
}

#[test]
fn gaussian_consistency_random_covariances() {
    // single-mode random SPD states sampled analytically onto the grid:
    // verify_state and classify_gaussian must issue matching labels away
    // from the critical point, and matching purities where quantum
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for trial in 0..8u64 {
        let (sxx, spp, sxp) = loop {
            let sxx: f64 = rng.gen_range(0.3..1.2);
            let spp: f64 = rng.gen_range(0.3..1.2);
            let max_off = (sxx * spp).sqrt() * 0.8;
            let sxp = rng.gen_range(-max_off..max_off);
            if sxx * spp - sxp * sxp > 0.05 {
                break (sxx, spp, sxp);
            }
        };
        let sigma = CovarianceMatrix::new(RealMatrix::from_rows(&[
            &[sxx, sxp],
            &[sxp, spp],
        ]))
        .unwrap();
        let state = GaussianState::centered(sigma, 1.0).unwrap();
        let hc = critical_hbar(&state).unwrap();
        let w = WignerGrid::sample(grid(), 1.0, |x, p| {
            gaussian_wigner(&state, &[x, p]).unwrap()
        })
        .unwrap();
        for factor in [0.6, 0.85, 1.2, 1.6] {
            let hp = hc * factor;
            let analytic = classify_gaussian(&state, hp).unwrap().label;
            let verdict = verify_state(&w, hp, DEFAULT_PSD_TOL).unwrap();
            assert_eq!(
                verdict.label,
                expected_state_label(analytic),
                "trial {trial}: labels disagree at hbar' = {hp} (critical {hc})"
            );
            if analytic != GaussianLabel::ClassicalOnly {
                let closed = gaussian_purity(&state, hp).unwrap();
                assert!(
                    (verdict.purity - closed).abs() <= 1e-3,
                    "trial {trial}: purity {} vs closed form {closed}",
                    verdict.purity
                );
            }
        }
    }
}

#[test]
fn coherent_purity_is_linear_below_reference() {
    let sx = (0.5f64).sqrt();
    let psi = GridWavefunction::sample(grid(), 1.0, |x| {
        Complex64::new(coherent_wavefunction(sx, x).unwrap(), 0.0)
    })
    .unwrap();
    let w = wigner_transform(&psi).unwrap();
    for hp in [0.5, 0.6, 0.7, 0.8, 0.9] {
        let v = verify_state(&w, hp, DEFAULT_PSD_TOL).unwrap();
        assert!(
            (v.purity - hp).abs() <= 1e-3,
            "purity {} differs from hbar'/hbar = {hp}",
            v.purity
        );
        assert_eq!(v.label, StateLabel::Mixed);
    }
}

#[test]
fn transform_and_analytic_sampling_verify_identically() {
    // the FFT-transformed coherent grid and the directly sampled analytic
    // Gaussian grid yield the same verdicts and nearly identical spectra
    let state = GaussianState::centered(
        CovarianceMatrix::new(RealMatrix::diagonal(&[0.5, 0.5])).unwrap(),
        1.0,
    )
    .unwrap();
    let sampled = WignerGrid::sample(grid(), 1.0, |x, p| {
        gaussian_wigner(&state, &[x, p]).unwrap()
    })
    .unwrap();
    let sx = (0.5f64).sqrt();
    let psi = GridWavefunction::sample(grid(), 1.0, |x| {
        Complex64::new(coherent_wavefunction(sx, x).unwrap(), 0.0)
    })
    .unwrap();
    let transformed = wigner_transform(&psi).unwrap();
    for hp in [0.5, 1.0, 1.5] {
        let a = verify_state(&sampled, hp, DEFAULT_PSD_TOL).unwrap();
        let b = verify_state(&transformed, hp, DEFAULT_PSD_TOL).unwrap();
        assert_eq!(a.label, b.label);
        assert!((a.purity - b.purity).abs() <= 1e-6);
        assert!((a.min_eigenvalue - b.min_eigenvalue).abs() <= 1e-7);
    }
}

#[test]
fn scan_transition_brackets_critical_hbar() {
    let state = GaussianState::centered(
        CovarianceMatrix::new(RealMatrix::diagonal(&[0.5, 0.5])).unwrap(),
        1.0,
    )
    .unwrap();
    let w = WignerGrid::sample(grid(), 1.0, |x, p| {
        gaussian_wigner(&state, &[x, p]).unwrap()
    })
    .unwrap();
    let values: Vec<f64> = (0..11).map(|i| 0.5 + 0.1 * i as f64).collect();
    let report = scan_hbar(&w, &values, DEFAULT_PSD_TOL).unwrap();
    let hc = critical_hbar(&state).unwrap();
    let to_invalid = report
        .transitions
        .iter()
        .find(|t| t.to == StateLabel::NotAState)
        .expect("a transition out of the quantum regime");
    assert!(
        to_invalid.hbar_before <= hc + 1e-9 && hc <= to_invalid.hbar_after + 1e-9,
        "critical hbar {hc} outside bracket [{}, {}]",
        to_invalid.hbar_before,
        to_invalid.hbar_after
    );
}
