//! Discretized wavefunctions and phase-space grids: the FFT-based Wigner
//! transform, mixtures, marginals, and covariance estimation by Riemann sum.
//!
//! Offsets use the y = 2Δx·m lattice so x ± y/2 lands exactly on grid nodes,
//! and the momentum grid is the FFT-conjugate lattice of that y-lattice
//! scaled by ħ (Δp = 2πħ/(N·2Δx), points centered on zero). With these
//! choices the position marginal and the round-trip against the kernel
//! reconstruction hold to rounding error, which is what pins the convention.

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::gaussian::{CovarianceMatrix, GaussianError};
use crate::matcore::RealMatrix;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid point count {0} must be a power of two and at least 16")]
    BadPointCount(usize),
    #[error("grid half-width must be positive, got {0}")]
    BadHalfWidth(f64),
    #[error("hbar must be positive, got {0}")]
    BadHbar(f64),
    #[error("value count {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("wavefunction norm is too small to normalize ({0:.3e})")]
    NotNormalized(f64),
    #[error("wavefunction leaks at the grid edge: |psi| = {magnitude:.3e} at the boundary (relative tolerance {tol:.1e})")]
    EdgeLeakage { magnitude: f64, tol: f64 },
    #[error("hermite order {0} is out of range (k <= 8)")]
    HermiteOrder(usize),
    #[error("components use different grids or hbar values")]
    GridMismatch,
    #[error("mixture weights must be nonnegative and sum to 1 (sum error {0:.3e})")]
    BadWeights(f64),
    #[error("wigner grid mass {mass} deviates from 1 by more than {tol}")]
    MassDeficit { mass: f64, tol: f64 },
    #[error("imaginary residual {0:.3e} of the transform exceeds 1e-12; inconsistent input")]
    ImaginaryResidual(f64),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

/// Relative edge-decay bound a wavefunction must satisfy to avoid
/// wrap-around in the correlation lattice.
pub const EDGE_DECAY_TOL: f64 = 1e-10;

/// Tolerance on the total Riemann mass of a Wigner grid.
pub const MASS_TOL: f64 = 1e-6;

/// Uniform position grid x_j = -L + jΔx, Δx = 2L/N.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionGrid {
    half_width: f64,
    points: usize,
}

impl PositionGrid {
    pub fn new(half_width: f64, points: usize) -> Result<Self, GridError> {
        if points < 16 || !points.is_power_of_two() {
            return Err(GridError::BadPointCount(points));
        }
        if !(half_width > 0.0) {
            return Err(GridError::BadHalfWidth(half_width));
        }
        Ok(PositionGrid { half_width, points })
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    pub fn points_iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|j| self.point(j))
    }
}

/// Complex wavefunction samples on a position grid, normalized so that
/// Σ|ψ_j|²Δx = 1 and decaying below `EDGE_DECAY_TOL` at the boundary.
#[derive(Debug, Clone)]
pub struct GridWavefunction {
    grid: PositionGrid,
    values: Vec<Complex64>,
    hbar: f64,
}

impl GridWavefunction {
    pub fn new(grid: PositionGrid, mut values: Vec<Complex64>, hbar: f64) -> Result<Self, GridError> {
        if values.len() != grid.len() {
            return Err(GridError::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if !(hbar > 0.0) {
            return Err(GridError::BadHbar(hbar));
        }
        let dx = grid.spacing();
        let norm2: f64 = values.iter().map(|v| v.norm_sqr()).sum::<f64>() * dx;
        // a finite norm also rules out non-finite samples
        if !norm2.is_finite() || norm2 < 1e-300 {
            return Err(GridError::NotNormalized(norm2));
        }
        let scale = norm2.sqrt().recip();
        for v in &mut values {
            *v *= scale;
        }
        let vmax = values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let edge = values[0].norm().max(values[values.len() - 1].norm());
        if edge > EDGE_DECAY_TOL * vmax {
            return Err(GridError::EdgeLeakage { magnitude: edge, tol: EDGE_DECAY_TOL });
        }
        Ok(GridWavefunction { grid, values, hbar })
    }

    /// Samples a pointwise function of x onto the grid (then normalizes).
    pub fn sample(
        grid: PositionGrid,
        hbar: f64,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self, GridError> {
        let values = grid.points_iter().map(f).collect();
        Self::new(grid, values, hbar)
    }

    pub fn grid(&self) -> &PositionGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Discrete inner product ⟨self|other⟩ = Σ ψ*φ Δx.
    pub fn inner(&self, other: &GridWavefunction) -> Complex64 {
        let dx = self.grid.spacing();
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * dx
    }

    /// ħ-scaled Fourier transform sampled on the conjugate momentum grid:
    /// φ(p_k) = (2πħ)^{-1/2} Σ_j ψ_j e^{-i p_k x_j/ħ} Δx.
    pub fn momentum_samples(&self) -> (Vec<f64>, Vec<Complex64>) {
        let n = self.grid.len();
        let dx = self.grid.spacing();
        let dp = momentum_spacing(&self.grid, self.hbar);
        let pref = dx / (2.0 * std::f64::consts::PI * self.hbar).sqrt();
        let ps: Vec<f64> = (0..n).map(|k| (k as f64 - (n / 2) as f64) * dp).collect();
        let phi = ps
            .iter()
            .map(|&p| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, v) in self.values.iter().enumerate() {
                    let theta = -p * self.grid.point(j) / self.hbar;
                    acc += v * Complex64::from_polar(1.0, theta);
                }
                acc * pref
            })
            .collect();
        (ps, phi)
    }
}

fn momentum_spacing(grid: &PositionGrid, hbar: f64) -> f64 {
    2.0 * std::f64::consts::PI * hbar / (grid.len() as f64 * 2.0 * grid.spacing())
}

/// k-th harmonic-oscillator eigenfunction with ground-state position spread
/// σ_X, sampled and normalized on the grid. k = 0 reproduces the coherent
/// wavepacket.
pub fn hermite_wavefunction(
    k: usize,
    sigma_x: f64,
    grid: &PositionGrid,
    hbar: f64,
) -> Result<GridWavefunction, GridError> {
    if k > 8 {
        return Err(GridError::HermiteOrder(k));
    }
    if !(sigma_x > 0.0) {
        return Err(GaussianError::NonPositiveWidth(sigma_x).into());
    }
    let values = grid
        .points_iter()
        .map(|x| {
            let u = x / (sigma_x * std::f64::consts::SQRT_2);
            // physicists' Hermite polynomial by recurrence
            let mut h_prev = 1.0;
            let mut h = if k == 0 { 1.0 } else { 2.0 * u };
            for m in 1..k {
                let next = 2.0 * u * h - 2.0 * m as f64 * h_prev;
                h_prev = h;
                h = next;
            }
            let gauss = (-x * x / (4.0 * sigma_x * sigma_x)).exp();
            Complex64::new(h * gauss, 0.0)
        })
        .collect();
    GridWavefunction::new(grid.clone(), values, hbar)
}

/// Convex mixture Σ_j λ_j |ψ_j⟩⟨ψ_j| of grid wavefunctions.
#[derive(Debug, Clone)]
pub struct MixtureEnsemble {
    components: Vec<(f64, GridWavefunction)>,
}

impl MixtureEnsemble {
    pub fn new(components: Vec<(f64, GridWavefunction)>) -> Result<Self, GridError> {
        if components.is_empty() {
            return Err(GridError::BadWeights(1.0));
        }
        let sum: f64 = components.iter().map(|(w, _)| w).sum();
        if components.iter().any(|(w, _)| *w < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(GridError::BadWeights((sum - 1.0).abs()));
        }
        let (g0, h0) = (components[0].1.grid().clone(), components[0].1.hbar());
        if components.iter().any(|(_, psi)| psi.grid() != &g0 || psi.hbar() != h0) {
            return Err(GridError::GridMismatch);
        }
        Ok(MixtureEnsemble { components })
    }

    pub fn components(&self) -> &[(f64, GridWavefunction)] {
        &self.components
    }
}

/// Real Wigner samples W(x_j, p_k) on the N x N phase-space grid, row-major
/// in j.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    xgrid: PositionGrid,
    pvalues: Vec<f64>,
    w: Vec<f64>,
    hbar: f64,
}

impl WignerGrid {
    /// Wraps externally produced samples (file loads, analytic sampling),
    /// enforcing the unit-mass invariant.
    pub fn from_values(
        xgrid: PositionGrid,
        hbar: f64,
        w: Vec<f64>,
    ) -> Result<Self, GridError> {
        if !(hbar > 0.0) {
            return Err(GridError::BadHbar(hbar));
        }
        let n = xgrid.len();
        if w.len() != n * n {
            return Err(GridError::LengthMismatch { expected: n * n, got: w.len() });
        }
        let dp = momentum_spacing(&xgrid, hbar);
        let pvalues = (0..n).map(|k| (k as f64 - (n / 2) as f64) * dp).collect();
        let grid = WignerGrid { xgrid, pvalues, w, hbar };
        grid.validate()?;
        Ok(grid)
    }

    /// Samples an analytic phase-space density onto the conjugate grid.
    pub fn sample(
        xgrid: PositionGrid,
        hbar: f64,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self, GridError> {
        let n = xgrid.len();
        let dp = momentum_spacing(&xgrid, hbar);
        let mut w = Vec::with_capacity(n * n);
        for j in 0..n {
            let x = xgrid.point(j);
            for k in 0..n {
                let p = (k as f64 - (n / 2) as f64) * dp;
                w.push(f(x, p));
            }
        }
        Self::from_values(xgrid, hbar, w)
    }

    pub fn xgrid(&self) -> &PositionGrid {
        &self.xgrid
    }

    pub fn pvalues(&self) -> &[f64] {
        &self.pvalues
    }

    pub fn p_spacing(&self) -> f64 {
        self.pvalues[1] - self.pvalues[0]
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn value(&self, j: usize, k: usize) -> f64 {
        self.w[j * self.xgrid.len() + k]
    }

    pub fn row(&self, j: usize) -> &[f64] {
        let n = self.xgrid.len();
        &self.w[j * n..(j + 1) * n]
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }

    /// ΣΣ w ΔxΔp
    pub fn mass(&self) -> f64 {
        self.w.iter().sum::<f64>() * self.xgrid.spacing() * self.p_spacing()
    }

    /// ΣΣ w² ΔxΔp
    pub fn l2_mass(&self) -> f64 {
        self.w.iter().map(|v| v * v).sum::<f64>() * self.xgrid.spacing() * self.p_spacing()
    }

    pub fn validate(&self) -> Result<(), GridError> {
        let mass = self.mass();
        // negated-form comparison so a NaN mass fails too
        if !((mass - 1.0).abs() <= MASS_TOL) {
            return Err(GridError::MassDeficit { mass, tol: MASS_TOL });
        }
        Ok(())
    }
}

/// Wigner transform of a grid wavefunction:
/// W(x,p) = (2πħ)^{-1} ∫ e^{-ipy/ħ} ψ(x+y/2) ψ*(x-y/2) dy,
/// evaluated per row by an FFT over the correlation lattice.
pub fn wigner_transform(psi: &GridWavefunction) -> Result<WignerGrid, GridError> {
    let grid = psi.grid().clone();
    let n = grid.len();
    let half = n / 2;
    let dx = grid.spacing();
    let hbar = psi.hbar();
    let dp = momentum_spacing(&grid, hbar);
    let pref = dx / (std::f64::consts::PI * hbar);

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);

    let mut w = vec![0.0f64; n * n];
    let mut max_w = 0.0f64;
    let mut max_imag = 0.0f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let values = psi.values();
    for j in 0..n {
        for (mi, slot) in buf.iter_mut().enumerate() {
            let m = mi as isize - half as isize;
            let a = j as isize + m;
            let b = j as isize - m;
            let c = if a >= 0 && (a as usize) < n && b >= 0 && (b as usize) < n {
                values[a as usize] * values[b as usize].conj()
            } else {
                Complex64::new(0.0, 0.0)
            };
            // (-1)^mi fold: centers the y-lattice for the plain FFT
            *slot = if mi % 2 == 0 { c } else { -c };
        }
        fft.process(&mut buf);
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let val = buf[k] * (sign * pref);
            w[j * n + k] = val.re;
            max_w = max_w.max(val.re.abs());
            max_imag = max_imag.max(val.im.abs());
        }
    }
    if max_imag > 1e-12 * max_w.max(1.0) {
        return Err(GridError::ImaginaryResidual(max_imag));
    }
    let pvalues = (0..n).map(|k| (k as f64 - half as f64) * dp).collect();
    let out = WignerGrid { xgrid: grid, pvalues, w, hbar };
    debug_assert!((out.mass() - 1.0).abs() <= MASS_TOL);
    Ok(out)
}

/// Wigner distribution of a mixture: the weight-summed component transforms.
pub fn mixture_wigner(ens: &MixtureEnsemble) -> Result<WignerGrid, GridError> {
    let mut iter = ens.components().iter();
    let (w0, psi0) = iter.next().expect("ensemble is non-empty");
    let first = wigner_transform(psi0)?;
    let mut acc: Vec<f64> = first.values().iter().map(|v| v * w0).collect();
    for (weight, psi) in iter {
        let wg = wigner_transform(psi)?;
        for (a, v) in acc.iter_mut().zip(wg.values()) {
            *a += weight * v;
        }
    }
    Ok(WignerGrid {
        xgrid: first.xgrid().clone(),
        pvalues: first.pvalues().to_vec(),
        w: acc,
        hbar: first.hbar(),
    })
}

/// Position and momentum densities by Riemann sum over the conjugate axis.
pub fn marginals(w: &WignerGrid) -> (Vec<f64>, Vec<f64>) {
    let n = w.xgrid().len();
    let dp = w.p_spacing();
    let dx = w.xgrid().spacing();
    let position = (0..n).map(|j| w.row(j).iter().sum::<f64>() * dp).collect();
    let momentum = (0..n)
        .map(|k| (0..n).map(|j| w.value(j, k)).sum::<f64>() * dx)
        .collect();
    (position, momentum)
}

/// First and second Riemann moments of the grid: the mean (x̄, p̄) and the
/// symmetrized 2x2 covariance matrix.
pub fn covariance_from_grid(w: &WignerGrid) -> Result<(Vec<f64>, CovarianceMatrix), GridError> {
    w.validate()?;
    let n = w.xgrid().len();
    let dx = w.xgrid().spacing();
    let dp = w.p_spacing();
    let cell = dx * dp;
    let mass = w.mass();
    let mut mx = 0.0;
    let mut mp = 0.0;
    for j in 0..n {
        let x = w.xgrid().point(j);
        for k in 0..n {
            let v = w.value(j, k) * cell;
            mx += x * v;
            mp += w.pvalues()[k] * v;
        }
    }
    mx /= mass;
    mp /= mass;
    let (mut sxx, mut sxp, mut spp) = (0.0, 0.0, 0.0);
    for j in 0..n {
        let x = w.xgrid().point(j) - mx;
        for k in 0..n {
            let p = w.pvalues()[k] - mp;
            let v = w.value(j, k) * cell;
            sxx += x * x * v;
            sxp += x * p * v;
            spp += p * p * v;
        }
    }
    sxx /= mass;
    sxp /= mass;
    spp /= mass;
    let sigma = RealMatrix::from_rows(&[&[sxx, sxp], &[sxp, spp]]);
    Ok((vec![mx, mp], CovarianceMatrix::new(sigma)?))
}
