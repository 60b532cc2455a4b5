//! Dense real-symmetric and complex-Hermitian eigensolvers, positivity tests
//! and the SPD matrix functions everything else is built on.
//!
//! The symmetric solver is a cyclic Jacobi iteration with the usual threshold
//! schedule; matrices here stay small (a few thousand at most for grid
//! kernels), where Jacobi is accurate and needs no external solver. Hermitian
//! problems are reduced to a real-symmetric one through the doubled embedding
//! `[[re, -im], [im, re]]`.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: asymmetry {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotSymmetric { defect: f64, tol: f64 },
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eig:.3e})")]
    NotPositiveDefinite { min_eig: f64 },
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
}

/// Relative symmetry / Hermiticity tolerance used by the constructors.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RealMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let lhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(lhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn scaled(&self, c: f64) -> RealMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out
    }

    pub fn add(&self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&rhs.data) {
            *o += b;
        }
        out
    }

    /// Largest entry magnitude (the norm used by all residual tolerances).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// max |a_ij - a_ji|
    pub fn symmetry_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        d
    }

    pub fn check_square(&self) -> Result<usize, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn check_symmetric(&self) -> Result<(), MatError> {
        self.check_square()?;
        self.check_finite()?;
        let defect = self.symmetry_defect();
        let tol = SYMMETRY_TOL * self.max_abs().max(1.0);
        if defect > tol {
            return Err(MatError::NotSymmetric { defect, tol });
        }
        Ok(())
    }

    pub fn check_finite(&self) -> Result<(), MatError> {
        if self.data.iter().any(|v| !v.is_finite()) {
            return Err(MatError::NonFinite);
        }
        Ok(())
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Complex Hermitian matrix carried as a (re, im) pair: re symmetric,
/// im antisymmetric.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    re: RealMatrix,
    im: RealMatrix,
}

impl HermitianMatrix {
    pub fn new(re: RealMatrix, im: RealMatrix) -> Result<Self, MatError> {
        let n = re.check_square()?;
        if im.rows() != n || im.cols() != n {
            return Err(MatError::DimensionMismatch { expected: n, got: im.rows() });
        }
        re.check_finite()?;
        im.check_finite()?;
        let scale = re.max_abs().max(im.max_abs()).max(1.0);
        let tol = SYMMETRY_TOL * scale;
        let re_defect = re.symmetry_defect();
        if re_defect > tol {
            return Err(MatError::NotHermitian { defect: re_defect, tol });
        }
        let mut im_defect = 0.0f64;
        for i in 0..n {
            im_defect = im_defect.max(im[(i, i)].abs());
            for j in (i + 1)..n {
                im_defect = im_defect.max((im[(i, j)] + im[(j, i)]).abs());
            }
        }
        if im_defect > tol {
            return Err(MatError::NotHermitian { defect: im_defect, tol });
        }
        Ok(HermitianMatrix { re, im })
    }

    pub fn dim(&self) -> usize {
        self.re.rows()
    }

    pub fn re(&self) -> &RealMatrix {
        &self.re
    }

    pub fn im(&self) -> &RealMatrix {
        &self.im
    }

    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }
}

/// Eigenvalues ascending; eigenvectors, when present, are the columns of an
/// orthonormal matrix aligned with `eigenvalues`.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<RealMatrix>,
}

impl SpectrumResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }
}

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi on a flat row-major symmetric matrix. Rotates the upper
/// triangle, accumulating eigenvector rows in `vt` when requested.
fn jacobi(a: &mut [f64], n: usize, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>), MatError> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut d: Vec<f64> = (0..n).map(|i| a[idx(i, i)]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0f64; n];
    // vt holds eigenvectors as rows so rotations touch contiguous memory
    let mut vt = if want_vectors {
        let mut v = vec![0.0f64; n * n];
        for i in 0..n {
            v[idx(i, i)] = 1.0;
        }
        Some(v)
    } else {
        None
    };

    for sweep in 0..MAX_SWEEPS {
        let mut sm = 0.0f64;
        for p in 0..n - 1 {
            for q in p + 1..n {
                sm += a[idx(p, q)].abs();
            }
        }
        if sm == 0.0 {
            return Ok(finish_jacobi(d, vt, n));
        }
        let thresh = if sweep < 3 { 0.2 * sm / (n * n) as f64 } else { 0.0 };

        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                let g = 100.0 * apq.abs();
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[idx(p, q)] = 0.0;
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a[idx(p, q)] = 0.0;
                let rot = |a: &mut [f64], i1: usize, i2: usize| {
                    let g = a[i1];
                    let h = a[i2];
                    a[i1] = g - s * (h + g * tau);
                    a[i2] = h + s * (g - h * tau);
                };
                for j in 0..p {
                    rot(a, idx(j, p), idx(j, q));
                }
                for j in p + 1..q {
                    rot(a, idx(p, j), idx(j, q));
                }
                for j in q + 1..n {
                    rot(a, idx(p, j), idx(q, j));
                }
                if let Some(v) = vt.as_deref_mut() {
                    for j in 0..n {
                        rot(v, idx(p, j), idx(q, j));
                    }
                }
            }
        }
        for p in 0..n {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }
    Err(MatError::NoConvergence(MAX_SWEEPS))
}

fn finish_jacobi(d: Vec<f64>, vt: Option<Vec<f64>>, n: usize) -> (Vec<f64>, Option<Vec<f64>>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vt_sorted = vt.map(|v| {
        let mut out = vec![0.0f64; n * n];
        for (new_row, &old_row) in order.iter().enumerate() {
            out[new_row * n..(new_row + 1) * n].copy_from_slice(&v[old_row * n..(old_row + 1) * n]);
        }
        out
    });
    (sorted, vt_sorted)
}

/// Full eigendecomposition of a symmetric matrix; eigenvalues ascending,
/// eigenvectors returned as orthonormal columns.
pub fn eig_symmetric(m: &RealMatrix) -> Result<SpectrumResult, MatError> {
    m.check_symmetric()?;
    let n = m.rows();
    let mut a = m.data().to_vec();
    let (vals, vt) = jacobi(&mut a, n, true)?;
    let vt = vt.unwrap();
    // vt rows are eigenvectors; expose them as columns
    let vectors = RealMatrix::from_fn(n, n, |i, j| vt[j * n + i]);
    Ok(SpectrumResult { eigenvalues: vals, eigenvectors: Some(vectors) })
}

/// Eigenvalues only (no vector accumulation).
pub fn eig_symmetric_values(m: &RealMatrix) -> Result<Vec<f64>, MatError> {
    m.check_symmetric()?;
    let n = m.rows();
    let mut a = m.data().to_vec();
    let (vals, _) = jacobi(&mut a, n, false)?;
    Ok(vals)
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Solved through the real-symmetric embedding `[[re, -im], [im, re]]` of
/// doubled dimension, whose spectrum is that of `h` with every eigenvalue
/// doubled; adjacent pairs of the sorted embedded spectrum are averaged.
/// A vanishing imaginary part short-circuits to the plain symmetric solve
/// (for which the embedding is block diagonal and the pairing exact).
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<SpectrumResult, MatError> {
    let n = h.dim();
    if h.im().max_abs() <= 1e-13 * h.re().max_abs().max(1.0) {
        let vals = eig_symmetric_values(h.re())?;
        return Ok(SpectrumResult { eigenvalues: vals, eigenvectors: None });
    }
    let mut e = vec![0.0f64; 4 * n * n];
    let dim = 2 * n;
    for i in 0..n {
        for j in 0..n {
            let re = h.re()[(i, j)];
            let im = h.im()[(i, j)];
            e[i * dim + j] = re;
            e[(i + n) * dim + (j + n)] = re;
            e[i * dim + (j + n)] = -im;
            e[(i + n) * dim + j] = im;
        }
    }
    let (vals, _) = jacobi(&mut e, dim, false)?;
    let dedup: Vec<f64> = (0..n).map(|i| 0.5 * (vals[2 * i] + vals[2 * i + 1])).collect();
    Ok(SpectrumResult { eigenvalues: dedup, eigenvectors: None })
}

/// True iff the smallest eigenvalue is no more negative than
/// `-tol * max(1, scale)`.
pub fn is_psd(s: &SpectrumResult, scale: f64, tol: f64) -> bool {
    s.min_eigenvalue() >= -tol * scale.max(1.0)
}

/// Symmetric square root of a symmetric positive-definite matrix.
pub fn sqrt_spd(m: &RealMatrix) -> Result<RealMatrix, MatError> {
    let spec = eig_symmetric(m)?;
    let min_eig = spec.min_eigenvalue();
    if min_eig <= 1e-12 * spec.max_eigenvalue().abs().max(1e-300) {
        return Err(MatError::NotPositiveDefinite { min_eig });
    }
    Ok(spd_function(&spec, f64::sqrt))
}

/// V f(Λ) Vᵀ for an already-computed SPD spectrum.
pub(crate) fn spd_function(spec: &SpectrumResult, f: impl Fn(f64) -> f64) -> RealMatrix {
    let v = spec.eigenvectors.as_ref().expect("spectrum carries vectors");
    let n = v.rows();
    let mut out = RealMatrix::zeros(n, n);
    for k in 0..n {
        let fk = f(spec.eigenvalues[k]);
        for i in 0..n {
            let vik = v[(i, k)] * fk;
            if vik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += vik * v[(j, k)];
            }
        }
    }
    // exact symmetry regardless of accumulation order
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (out[(i, j)] + out[(j, i)]);
            out[(i, j)] = avg;
            out[(j, i)] = avg;
        }
    }
    out
}

/// LU factorization with partial pivoting; backs `det` and the linear solves
/// needed for Gaussian quadratic forms.
pub struct Lu {
    lu: RealMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn new(m: &RealMatrix) -> Result<Self, MatError> {
        let n = m.check_square()?;
        m.check_finite()?;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for col in 0..n {
            let mut pivot = col;
            let mut best = lu[(col, col)].abs();
            for r in col + 1..n {
                let v = lu[(r, col)].abs();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot, j)];
                    lu[(pivot, j)] = tmp;
                }
                perm.swap(col, pivot);
                sign = -sign;
            }
            let d = lu[(col, col)];
            if d == 0.0 {
                continue; // singular; det() will report 0
            }
            for r in col + 1..n {
                let f = lu[(r, col)] / d;
                lu[(r, col)] = f;
                for j in col + 1..n {
                    let sub = f * lu[(col, j)];
                    lu[(r, j)] -= sub;
                }
            }
        }
        Ok(Lu { lu, perm, sign })
    }

    pub fn det(&self) -> f64 {
        let n = self.lu.rows();
        let mut d = self.sign;
        for i in 0..n {
            d *= self.lu[(i, i)];
        }
        d
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n);
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                y[i] -= self.lu[(i, j)] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] -= self.lu[(i, j)] * y[j];
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }
}

/// Determinant through pivoted LU.
pub fn det(m: &RealMatrix) -> Result<f64, MatError> {
    Ok(Lu::new(m)?.det())
}
