//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Grid criteria run at the default desk scale N = 256, L = 12.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hbarscan_core::gaussian::GaussianLabel;
use hbarscan_core::verifier::StateLabel;
use hbarscan_core::*;

const N: usize = 256;
const L: f64 = 12.0;
const SIGMA2: f64 = 0.5;

fn pass(criterion: usize, name: &str) {
    println!("[acceptance] criterion {criterion} ({name}): PASS");
}

fn grid() -> PositionGrid {
    PositionGrid::new(L, N).unwrap()
}

fn coherent_state() -> GaussianState {
    let sigma = CovarianceMatrix::new(RealMatrix::diagonal(&[SIGMA2, SIGMA2])).unwrap();
    GaussianState::centered(sigma, 1.0).unwrap()
}

fn coherent_psi() -> GridWavefunction {
    let sx = SIGMA2.sqrt();
    GridWavefunction::sample(grid(), 1.0, |x| {
        Complex64::new(coherent_wavefunction(sx, x).unwrap(), 0.0)
    })
    .unwrap()
}

fn random_spd(dim: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let a = RealMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    a.transpose().matmul(&a).add(&RealMatrix::identity(dim).scaled(0.3))
}

#[test]
fn criterion_01_coherent_trichotomy() {
    let state = coherent_state();
    let analytic_labels: Vec<GaussianLabel> = [0.5, 1.0, 1.5]
        .iter()
        .map(|&h| classify_gaussian(&state, h).unwrap().label)
        .collect();
    assert_eq!(
        analytic_labels,
        vec![GaussianLabel::QuantumMixed, GaussianLabel::QuantumPure, GaussianLabel::ClassicalOnly]
    );

    // independent pipeline: the analytic Gaussian density sampled onto the
    // grid, then reconstructed and diagonalized
    let w = WignerGrid::sample(grid(), 1.0, |x, p| {
        gaussian_wigner(&state, &[x, p]).unwrap()
    })
    .unwrap();

    let v = verify_state(&w, 0.5, DEFAULT_PSD_TOL).unwrap();
    assert_eq!(v.label, StateLabel::Mixed);
    assert!((v.purity - 0.5).abs() <= 1e-3, "mixed purity {}", v.purity);
    let closed_form = gaussian_purity(&state, 0.5).unwrap();
    assert!((v.purity - closed_form).abs() <= 1e-3);

    let v = verify_state(&w, 1.0, DEFAULT_PSD_TOL).unwrap();
    assert_eq!(v.label, StateLabel::Pure);
    assert!((v.purity - 1.0).abs() <= 1e-6, "pure purity {}", v.purity);
    assert!(v.min_eigenvalue >= -1e-8, "pure min eig {}", v.min_eigenvalue);

    let v = verify_state(&w, 1.5, DEFAULT_PSD_TOL).unwrap();
    assert_eq!(v.label, StateLabel::NotAState);
    assert!(
        v.min_eigenvalue < -1e-6 * v.trace.abs(),
        "negativity {} too small",
        v.min_eigenvalue
    );

    // label agreement between the two pipelines
    for (&h, &gl) in [0.5, 1.0, 1.5].iter().zip(&analytic_labels) {
        let sl = verify_state(&w, h, DEFAULT_PSD_TOL).unwrap().label;
        let want = match gl {
            GaussianLabel::QuantumPure => StateLabel::Pure,
            GaussianLabel::QuantumMixed => StateLabel::Mixed,
            GaussianLabel::ClassicalOnly => StateLabel::NotAState,
            GaussianLabel::Invalid => unreachable!(),
        };
        assert_eq!(sl, want, "pipelines disagree at hbar' = {h}");
    }
    pass(1, "coherent trichotomy");
}

#[test]
fn criterion_02_transform_fidelity() {
    let w = wigner_transform(&coherent_psi()).unwrap();
    let g = grid();
    let mut max_err = 0.0f64;
    for j in 0..N {
        let x = g.point(j);
        for k in 0..N {
            let p = w.pvalues()[k];
            let want = (1.0 / std::f64::consts::PI) * (-x * x - p * p).exp();
            max_err = max_err.max((w.value(j, k) - want).abs());
        }
    }
    assert!(max_err <= 1e-8, "max |W_fft - W_analytic| = {max_err}");
    pass(2, "transform matches the analytic Gaussian");
}

#[test]
fn criterion_03_marginals_and_mass() {
    // Gaussian at 1e-8
    let psi = coherent_psi();
    let w = wigner_transform(&psi).unwrap();
    let (pos, mom) = marginals(&w);
    let (_, phi) = psi.momentum_samples();
    let g = grid();
    for j in 0..N {
        assert!((pos[j] - psi.values()[j].norm_sqr()).abs() <= 1e-8);
        let x = g.point(j);
        let analytic = (2.0 * std::f64::consts::PI * SIGMA2).sqrt().recip()
            * (-x * x / (2.0 * SIGMA2)).exp();
        assert!((pos[j] - analytic).abs() <= 1e-8);
        assert!((mom[j] - phi[j].norm_sqr()).abs() <= 1e-8);
    }
    assert!((w.mass() - 1.0).abs() <= 1e-6);

    // Hermite k <= 3 at 1e-6
    for k in 0..=3usize {
        let psi = hermite_wavefunction(k, SIGMA2.sqrt(), &g, 1.0).unwrap();
        let w = wigner_transform(&psi).unwrap();
        let (pos, mom) = marginals(&w);
        let (_, phi) = psi.momentum_samples();
        for j in 0..N {
            assert!((pos[j] - psi.values()[j].norm_sqr()).abs() <= 1e-6, "k={k} position");
            assert!((mom[j] - phi[j].norm_sqr()).abs() <= 1e-6, "k={k} momentum");
        }
        assert!((w.mass() - 1.0).abs() <= 1e-6, "k={k} mass {}", w.mass());
    }
    pass(3, "marginal and mass identities");
}

#[test]
fn criterion_04_symplectic_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    // dual-route agreement is enforced inside symplectic_eigenvalues at
    // 1e-10 (CrossCheckMismatch otherwise); conjugation invariance at 1e-8
    for trial in 0..100u64 {
        let n = 1 + (trial % 3) as usize;
        let sigma = random_spd(2 * n, &mut rng);
        let s = random_symplectic(n, 31_000 + trial);
        let w1 = symplectic_eigenvalues(&sigma).unwrap();
        let w2 = symplectic_eigenvalues(&s.transpose().matmul(&sigma).matmul(&s)).unwrap();
        for (a, b) in w1.lambdas().iter().zip(w2.lambdas()) {
            assert!((a - b).abs() <= 1e-8 * a.max(1.0), "invariance broke: {a} vs {b}");
        }
    }
    // n = 1 closed form λ = √(det Σ) at 1e-10
    for _ in 0..100 {
        let sigma = random_spd(2, &mut rng);
        let lam = symplectic_eigenvalues(&sigma).unwrap().min();
        let closed = det(&sigma).unwrap().sqrt();
        assert!((lam - closed).abs() <= 1e-10 * closed.max(1.0));
    }
    pass(4, "symplectic eigenvalue correctness");
}

#[test]
fn criterion_05_klm_implies_rsi() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut passing = 0usize;
    let mut counterexamples = 0usize;
    let mut attempts = 0usize;
    while passing < 1000 {
        attempts += 1;
        assert!(attempts < 200_000, "generator starved");
        let n = 1 + (attempts % 3);
        let hbar_prime = rng.gen_range(0.3..1.4);
        // alternate free sampling with constructed Williamson forms so the
        // passing set is not dominated by one shape
        let sigma = if attempts % 2 == 0 {
            random_spd(2 * n, &mut rng)
        } else {
            let lam: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0) * hbar_prime).collect();
            let mut d = Vec::with_capacity(2 * n);
            d.extend(lam.iter());
            d.extend(lam.iter());
            let s = random_symplectic(n, 90_000 + attempts as u64);
            s.transpose().matmul(&RealMatrix::diagonal(&d)).matmul(&s)
        };
        let Ok(cov) = CovarianceMatrix::new(sigma) else { continue };
        let Ok(state) = GaussianState::centered(cov, 1.0) else { continue };
        if klm_check(&state, hbar_prime).unwrap() {
            passing += 1;
            if !rsi_check(&state, hbar_prime).iter().all(|&b| b) {
                counterexamples += 1;
            }
        }
    }
    assert_eq!(counterexamples, 0, "KLM ⇒ RSI violated {counterexamples} times");
    pass(5, "KLM implies RSI on 1000 random covariances");
}

#[test]
fn criterion_06_round_trip_and_spectral_consistency() {
    let psi = coherent_psi();
    let w = wigner_transform(&psi).unwrap();

    // rank-one kernel round trip at equal hbar
    let kernel = reconstruct_kernel(&w, 1.0).unwrap();
    let mut err = 0.0f64;
    for r in 0..N / 2 {
        for s in 0..N / 2 {
            let want = psi.values()[2 * r] * psi.values()[2 * s].conj();
            err = err.max((kernel.value(r, s) - want).norm());
        }
    }
    assert!(err <= 1e-8, "round-trip kernel error {err}");

    for hp in [0.5, 1.0, 1.5] {
        let kernel = reconstruct_kernel(&w, hp).unwrap();
        let spec = operator_spectrum(&kernel).unwrap();
        let sum: f64 = spec.eigenvalues.iter().sum();
        assert!((sum - spec.trace).abs() <= 1e-8, "eigenvalue sum vs trace at {hp}");
        let spectral: f64 = spec.eigenvalues.iter().map(|l| l * l).sum();
        let phase_space = 2.0 * std::f64::consts::PI * hp * w.l2_mass();
        assert!(
            (spectral - phase_space).abs() <= 1e-5 * spectral.max(1.0),
            "purity routes disagree at {hp}: {spectral} vs {phase_space}"
        );
    }
    pass(6, "round-trip and spectral consistency");
}

#[test]
fn criterion_07_nongaussian_purity_destroyed() {
    let psi = hermite_wavefunction(1, SIGMA2.sqrt(), &grid(), 1.0).unwrap();
    let w = wigner_transform(&psi).unwrap();

    let v = verify_state(&w, 1.0, DEFAULT_PSD_TOL).unwrap();
    assert_eq!(v.label, StateLabel::Pure);
    assert!((v.purity - 1.0).abs() <= 1e-6);
    assert!(v.min_eigenvalue >= -1e-8);

    let mut evidence = Vec::new();
    for hp in [0.8, 0.9, 1.1, 1.25] {
        let v = verify_state(&w, hp, DEFAULT_PSD_TOL).unwrap();
        assert!(v.purity < 0.999, "purity {} at hbar' = {hp}", v.purity);
        if hp < 1.0 {
            evidence.push((hp, v.label != StateLabel::NotAState));
        }
    }
    // conjecture evidence: reported, never asserted
    println!("[acceptance]   decrease-of-hbar PSD evidence: {evidence:?}");
    pass(7, "non-Gaussian purity destroyed by any hbar variation");
}

#[test]
fn criterion_08_mixture_linearity() {
    let g = grid();
    let sx = SIGMA2.sqrt();
    let h0 = hermite_wavefunction(0, sx, &g, 1.0).unwrap();
    let h1 = hermite_wavefunction(1, sx, &g, 1.0).unwrap();
    let ens = MixtureEnsemble::new(vec![(0.5, h0), (0.5, h1)]).unwrap();
    let w = mixture_wigner(&ens).unwrap();
    let v = verify_state(&w, 1.0, DEFAULT_PSD_TOL).unwrap();
    assert!((v.eigenvalues[0] - 0.5).abs() <= 1e-3, "top {}", v.eigenvalues[0]);
    assert!((v.eigenvalues[1] - 0.5).abs() <= 1e-3, "second {}", v.eigenvalues[1]);
    assert!((v.purity - 0.5).abs() <= 1e-3, "purity {}", v.purity);
    pass(8, "mixture eigenvalues and purity");
}

#[test]
fn criterion_09_finite_sample_klm() {
    let w_coherent = wigner_transform(&coherent_psi()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let points: Vec<(f64, f64)> = (0..16)
        .map(|_| (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
        .collect();

    // ground truth against klm_check on Gaussian states at three hbar' values
    let state = coherent_state();
    for hp in [0.5, 0.8, 1.0] {
        assert!(klm_check(&state, hp).unwrap());
        assert!(
            klm_finite_sample(&w_coherent, hp, &points).unwrap(),
            "finite-sample tester rejected a valid state at {hp}"
        );
    }

    // wide Gaussian (critical hbar = 2) pins the phase convention
    let wide_sigma = CovarianceMatrix::new(RealMatrix::identity(2)).unwrap();
    let wide_state = GaussianState::centered(wide_sigma, 1.0).unwrap();
    let w_wide = WignerGrid::sample(grid(), 1.0, |x, p| {
        gaussian_wigner(&wide_state, &[x, p]).unwrap()
    })
    .unwrap();
    for hp in [1.0, 1.5, 2.0] {
        assert_eq!(
            klm_check(&wide_state, hp).unwrap(),
            klm_finite_sample(&w_wide, hp, &points).unwrap(),
            "tester disagrees with klm_check at hbar' = {hp}"
        );
    }

    // violation witness for the coherent state at hbar' = 1.5
    let mut cross = vec![(0.0, 0.0)];
    for a in [0.5, 1.0, 1.5, 2.0] {
        cross.extend_from_slice(&[(a, 0.0), (-a, 0.0), (0.0, a), (0.0, -a)]);
    }
    assert!(
        !klm_finite_sample(&w_coherent, 1.5, &cross).unwrap(),
        "no violating subset found at hbar' = 1.5"
    );
    println!("[acceptance]   violation witness: origin-centered cross, 17 points");
    pass(9, "finite-sample KLM tester ground-truthed");
}
