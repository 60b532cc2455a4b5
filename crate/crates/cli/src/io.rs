//! File formats: JSON covariance specs, and CSV wavefunction / Wigner grids
//! with `#`-prefixed metadata headers. All floating-point text is written
//! with 17 significant digits so values round-trip bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use hbarscan_core::{CovarianceMatrix, GaussianState, GridWavefunction, PositionGrid, RealMatrix, WignerGrid};

use crate::CliError;

/// Structured covariance input: mode count, reference ħ, mean vector and
/// row-major covariance matrix.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceSpecFile {
    pub n: usize,
    pub hbar_ref: f64,
    pub mean: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
}

/// Loads a covariance spec and nondimensionalizes against `hbar_ref`
/// (Σ/ħ_ref, z̄/√ħ_ref), so the returned state has reference ħ = 1 and all
/// classification happens on ħ′/ħ_ref ratios.
pub fn read_covariance(path: &Path) -> Result<(GaussianState, f64), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let spec: CovarianceSpecFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let dim = 2 * spec.n;
    if spec.mean.len() != dim {
        return Err(CliError::Parse(format!(
            "field `mean`: expected {dim} entries for n = {}, got {}",
            spec.n,
            spec.mean.len()
        )));
    }
    if spec.sigma.len() != dim || spec.sigma.iter().any(|row| row.len() != dim) {
        return Err(CliError::Parse(format!(
            "field `sigma`: expected a {dim}x{dim} matrix"
        )));
    }
    if !(spec.hbar_ref > 0.0) {
        return Err(CliError::InvalidObject(format!(
            "field `hbar_ref` must be positive, got {}",
            spec.hbar_ref
        )));
    }
    let scale = spec.hbar_ref;
    let sigma = RealMatrix::from_fn(dim, dim, |i, j| spec.sigma[i][j] / scale);
    let mean: Vec<f64> = spec.mean.iter().map(|m| m / scale.sqrt()).collect();
    let cov = CovarianceMatrix::new(sigma).map_err(|e| CliError::InvalidObject(e.to_string()))?;
    let state = GaussianState::new(mean, cov, 1.0)
        .map_err(|e| CliError::InvalidObject(e.to_string()))?;
    Ok((state, spec.hbar_ref))
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct CsvHeader {
    hbar: f64,
    l: f64,
    n: usize,
    columns: String,
    data_start: usize,
}

fn parse_header(path: &Path, text: &str, want_columns: &str) -> Result<CsvHeader, CliError> {
    let mut hbar = None;
    let mut l = None;
    let mut n = None;
    let mut columns = None;
    let mut data_start = 0;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            let (key, value) = meta.split_once('=').ok_or_else(|| {
                CliError::Parse(format!("{}:{}: malformed metadata line", path.display(), idx + 1))
            })?;
            let parse = |v: &str| {
                v.trim().parse::<f64>().map_err(|_| {
                    CliError::Parse(format!(
                        "{}:{}: field `{}` is not a number",
                        path.display(),
                        idx + 1,
                        key.trim()
                    ))
                })
            };
            match key.trim() {
                "hbar" => hbar = Some(parse(value)?),
                "L" => l = Some(parse(value)?),
                "N" => n = Some(parse(value)? as usize),
                other => {
                    return Err(CliError::Parse(format!(
                        "{}:{}: unknown metadata field `{other}`",
                        path.display(),
                        idx + 1
                    )))
                }
            }
        } else if line.is_empty() {
            continue;
        } else {
            columns = Some(line.to_string());
            data_start = idx + 1;
            break;
        }
    }
    let header = CsvHeader {
        hbar: hbar
            .ok_or_else(|| CliError::Parse(format!("{}: missing `# hbar=` header", path.display())))?,
        l: l.ok_or_else(|| CliError::Parse(format!("{}: missing `# L=` header", path.display())))?,
        n: n.ok_or_else(|| CliError::Parse(format!("{}: missing `# N=` header", path.display())))?,
        columns: columns
            .ok_or_else(|| CliError::Parse(format!("{}: missing column header", path.display())))?,
        data_start,
    };
    if header.columns != want_columns {
        return Err(CliError::Parse(format!(
            "{}: expected column header `{want_columns}`, found `{}`",
            path.display(),
            header.columns
        )));
    }
    Ok(header)
}

fn parse_fields<const K: usize>(path: &Path, lineno: usize, line: &str) -> Result<[f64; K], CliError> {
    let mut out = [0.0; K];
    let mut parts = line.split(',');
    for (slot_idx, slot) in out.iter_mut().enumerate() {
        let field = parts.next().ok_or_else(|| {
            CliError::Parse(format!(
                "{}:{}: expected {K} comma-separated fields",
                path.display(),
                lineno
            ))
        })?;
        *slot = field.trim().parse::<f64>().map_err(|_| {
            CliError::Parse(format!(
                "{}:{}: field {} is not a number: `{}`",
                path.display(),
                lineno,
                slot_idx + 1,
                field.trim()
            ))
        })?;
    }
    if parts.next().is_some() {
        return Err(CliError::Parse(format!(
            "{}:{}: expected exactly {K} fields",
            path.display(),
            lineno
        )));
    }
    Ok(out)
}

/// Reads an `x,re,im` wavefunction CSV; the samples are re-normalized and the
/// edge-decay invariant enforced on construction.
pub fn read_wavefunction(path: &Path) -> Result<GridWavefunction, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let header = parse_header(path, &text, "x,re,im")?;
    let grid = PositionGrid::new(header.l, header.n)
        .map_err(|e| CliError::InvalidObject(e.to_string()))?;
    let mut values = Vec::with_capacity(header.n);
    for (idx, line) in text.lines().enumerate().skip(header.data_start) {
        if line.trim().is_empty() {
            continue;
        }
        let [x, re, im] = parse_fields::<3>(path, idx + 1, line)?;
        let want_x = grid.point(values.len());
        if (x - want_x).abs() > 1e-9 * header.l.max(1.0) {
            return Err(CliError::Parse(format!(
                "{}:{}: x = {x} does not match the declared grid (expected {want_x})",
                path.display(),
                idx + 1
            )));
        }
        values.push(Complex64::new(re, im));
    }
    if values.len() != header.n {
        return Err(CliError::Parse(format!(
            "{}: expected {} samples, found {}",
            path.display(),
            header.n,
            values.len()
        )));
    }
    GridWavefunction::new(grid, values, header.hbar)
        .map_err(|e| CliError::InvalidObject(e.to_string()))
}

pub fn write_wavefunction(path: &Path, psi: &GridWavefunction) -> Result<(), CliError> {
    let grid = psi.grid();
    let mut out = String::new();
    let _ = writeln!(out, "# hbar={}", fmt_f64(psi.hbar()));
    let _ = writeln!(out, "# L={}", fmt_f64(grid.half_width()));
    let _ = writeln!(out, "# N={}", grid.len());
    out.push_str("x,re,im\n");
    for (j, v) in psi.values().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", fmt_f64(grid.point(j)), fmt_f64(v.re), fmt_f64(v.im));
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Reads an `x,p,w` Wigner CSV (row-major in x); the unit-mass invariant is
/// enforced on construction.
pub fn read_wigner(path: &Path) -> Result<WignerGrid, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let header = parse_header(path, &text, "x,p,w")?;
    let n = header.n;
    let grid = PositionGrid::new(header.l, n)
        .map_err(|e| CliError::InvalidObject(e.to_string()))?;
    let dp = std::f64::consts::PI * header.hbar / (2.0 * header.l);
    let mut w = Vec::with_capacity(n * n);
    for (idx, line) in text.lines().enumerate().skip(header.data_start) {
        if line.trim().is_empty() {
            continue;
        }
        let [x, p, value] = parse_fields::<3>(path, idx + 1, line)?;
        let j = w.len() / n;
        let k = w.len() % n;
        if j >= n {
            return Err(CliError::Parse(format!(
                "{}:{}: more than N*N = {} rows",
                path.display(),
                idx + 1,
                n * n
            )));
        }
        let want_x = grid.point(j);
        let want_p = (k as f64 - (n / 2) as f64) * dp;
        if (x - want_x).abs() > 1e-9 * header.l.max(1.0)
            || (p - want_p).abs() > 1e-9 * want_p.abs().max(1.0)
        {
            return Err(CliError::Parse(format!(
                "{}:{}: (x, p) = ({x}, {p}) does not match the declared grid",
                path.display(),
                idx + 1
            )));
        }
        w.push(value);
    }
    if w.len() != n * n {
        return Err(CliError::Parse(format!(
            "{}: expected {} rows, found {}",
            path.display(),
            n * n,
            w.len()
        )));
    }
    WignerGrid::from_values(grid, header.hbar, w)
        .map_err(|e| CliError::InvalidObject(e.to_string()))
}

pub fn write_wigner(path: &Path, w: &WignerGrid) -> Result<(), CliError> {
    let grid = w.xgrid();
    let n = grid.len();
    let mut out = String::with_capacity(n * n * 60);
    let _ = writeln!(out, "# hbar={}", fmt_f64(w.hbar()));
    let _ = writeln!(out, "# L={}", fmt_f64(grid.half_width()));
    let _ = writeln!(out, "# N={n}");
    out.push_str("x,p,w\n");
    for j in 0..n {
        let x = fmt_f64(grid.point(j));
        for k in 0..n {
            let _ = writeln!(out, "{},{},{}", x, fmt_f64(w.pvalues()[k]), fmt_f64(w.value(j, k)));
        }
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// SHA-256 digest of a file's bytes, hex-encoded; recorded in reports.
pub fn file_digest(path: &Path) -> Result<String, CliError> {
    use sha2::{Digest, Sha256};
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(hasher
        .finalize()
        .iter()
        .fold(String::with_capacity(64), |mut acc, b| {
            let _ = write!(acc, "{b:02x}");
            acc
        }))
}
