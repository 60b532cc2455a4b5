//! `hbarscan`: classify phase-space functions as quantum states under a
//! reinterpreted Planck constant.
//!
//! Machine-readable JSON reports go to stdout, human-readable tables to
//! stderr. Exit codes: 0 = valid quantum state, 2 = classical / not a state,
//! 1 = usage or I/O error, 3 = invalid input object.

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use hbarscan_core::gaussian::{self, GaussianLabel};
use hbarscan_core::verifier::{self, StateLabel};
use hbarscan_core::wignergrid;
use hbarscan_core::{
    classify_gaussian, gaussian_purity, hermite_wavefunction, verify_state, wigner_transform,
    GridWavefunction, PositionGrid, WignerGrid, DEFAULT_PSD_TOL,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    InvalidObject(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::InvalidObject(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Parse(m) | CliError::InvalidObject(m) => m,
        }
    }
}

impl From<verifier::VerifyError> for CliError {
    fn from(e: verifier::VerifyError) -> Self {
        CliError::InvalidObject(e.to_string())
    }
}

impl From<wignergrid::GridError> for CliError {
    fn from(e: wignergrid::GridError) -> Self {
        CliError::InvalidObject(e.to_string())
    }
}

impl From<gaussian::GaussianError> for CliError {
    fn from(e: gaussian::GaussianError) -> Self {
        CliError::InvalidObject(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "hbarscan",
    version,
    about = "Decide whether a phase-space function is the Wigner distribution of a quantum state as hbar varies"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct ReportOut {
    /// Also write the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a Gaussian covariance spec at a candidate hbar'
    Classify {
        /// Covariance spec (JSON: n, hbar_ref, mean, sigma)
        cov: PathBuf,
        /// Candidate hbar' (same units as the file's hbar_ref)
        #[arg(long)]
        hbar: f64,
        #[command(flatten)]
        report: ReportOut,
    },
    /// Wigner-transform a wavefunction CSV onto a phase-space grid CSV
    Wigner {
        /// Wavefunction samples (CSV: x,re,im with # hbar/L/N headers)
        psi: PathBuf,
        /// Output Wigner grid CSV
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a sampled Wigner grid at a candidate hbar'
    Verify {
        /// Wigner grid (CSV: x,p,w with # hbar/L/N headers)
        wigner: PathBuf,
        #[arg(long)]
        hbar: f64,
        /// PSD threshold relative to the trace
        #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
        tol: f64,
        /// Additionally run the finite-sample positivity tester on this many
        /// random phase-space points
        #[arg(long)]
        klm_points: Option<usize>,
        /// Seed for the finite-sample point set
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        report: ReportOut,
    },
    /// Scan hbar' over a range; input may be a covariance spec (.json) or a
    /// Wigner grid CSV
    Scan {
        input: PathBuf,
        #[arg(long)]
        hbar_min: f64,
        #[arg(long)]
        hbar_max: f64,
        /// Number of scan values (>= 2, inclusive endpoints)
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
        tol: f64,
        #[command(flatten)]
        report: ReportOut,
    },
    /// Dump the reconstructed operator eigenvalues at a candidate hbar'
    Spectrum {
        wigner: PathBuf,
        #[arg(long)]
        hbar: f64,
        #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
        tol: f64,
        #[command(flatten)]
        report: ReportOut,
    },
    /// Purity at a candidate hbar' (closed form for covariance specs,
    /// spectral for grids)
    Purity {
        input: PathBuf,
        #[arg(long)]
        hbar: f64,
        #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
        tol: f64,
        #[command(flatten)]
        report: ReportOut,
    },
    /// Generate wavefunction fixtures
    Sample {
        #[command(subcommand)]
        kind: SampleKind,
    },
}

#[derive(Subcommand)]
enum SampleKind {
    /// Coherent (Gaussian) wavepacket; default width saturates
    /// sigma_x * sigma_p = hbar/2
    Coherent {
        #[arg(long)]
        sigma_x: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 256)]
        grid_n: usize,
        #[arg(long, default_value_t = 12.0)]
        grid_l: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// k-th harmonic-oscillator eigenfunction (k <= 8)
    Hermite {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sigma_x: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 256)]
        grid_n: usize,
        #[arg(long, default_value_t = 12.0)]
        grid_l: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

// ── report structures ────────────────────────────────────────────────

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: String,
    inputs: Vec<InputRecord>,
    tolerances: Tolerances,
    result: T,
}

#[derive(Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

#[derive(Serialize, Default)]
struct Tolerances {
    #[serde(skip_serializing_if = "Option::is_none")]
    psd_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    saturation_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mass_tol: Option<f64>,
}

#[derive(Serialize)]
struct ClassifyResult {
    hbar_prime: f64,
    hbar_ratio: f64,
    label: GaussianLabel,
    lambda_min: f64,
    critical_hbar: f64,
    saturated: bool,
    rsi_satisfied: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    purity: Option<f64>,
}

#[derive(Serialize)]
struct WignerResult {
    hbar: f64,
    grid_l: f64,
    grid_n: usize,
    mass: f64,
    min_value: f64,
    max_value: f64,
    output: String,
}

#[derive(Serialize)]
struct VerifyResult {
    hbar_prime: f64,
    label: StateLabel,
    trace: f64,
    min_eigenvalue: f64,
    purity: f64,
    top_eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    klm_finite_sample: Option<KlmResult>,
}

#[derive(Serialize)]
struct KlmResult {
    passed: bool,
    points: usize,
    seed: u64,
}

#[derive(Serialize)]
struct ScanRow {
    hbar_prime: f64,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    purity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_eigenvalue: Option<f64>,
}

#[derive(Serialize)]
struct ScanResult {
    input_kind: String,
    rows: Vec<ScanRow>,
    transitions: Vec<TransitionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    critical_hbar: Option<f64>,
    /// (hbar', was PSD) for every scanned hbar' below the reference hbar:
    /// evidence on the decrease conjecture, reported without pass/fail
    /// semantics.
    #[serde(skip_serializing_if = "Option::is_none")]
    decrease_evidence: Option<Vec<(f64, bool)>>,
}

#[derive(Serialize)]
struct TransitionRow {
    hbar_before: f64,
    hbar_after: f64,
    from: String,
    to: String,
}

#[derive(Serialize)]
struct SpectrumResultOut {
    hbar_prime: f64,
    label: StateLabel,
    trace: f64,
    eigenvalues: Vec<f64>,
}

#[derive(Serialize)]
struct PurityResult {
    hbar_prime: f64,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    purity: Option<f64>,
    quantum: bool,
}

#[derive(Serialize)]
struct SampleResult {
    kind: String,
    hbar: f64,
    grid_l: f64,
    grid_n: usize,
    output: String,
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn emit<T: Serialize>(report: &Report<T>, out: &Option<PathBuf>) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(report).expect("report serialization");
    println!("{json}");
    if let Some(path) = out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn input_record(path: &Path) -> Result<InputRecord, CliError> {
    Ok(InputRecord {
        path: path.display().to_string(),
        sha256: io::file_digest(path)?,
    })
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if !(v > 0.0) {
        return Err(CliError::Usage(format!("--{name} must be positive, got {v}")));
    }
    Ok(())
}

// ── command handlers ─────────────────────────────────────────────────

fn cmd_classify(cov: &Path, hbar: f64, report_out: &ReportOut) -> Result<u8, CliError> {
    check_positive("hbar", hbar)?;
    let (state, hbar_ref) = io::read_covariance(cov)?;
    let ratio = hbar / hbar_ref;
    let verdict = classify_gaussian(&state, ratio)?;
    let purity = match verdict.label {
        GaussianLabel::QuantumPure | GaussianLabel::QuantumMixed => {
            Some(gaussian_purity(&state, ratio)?)
        }
        _ => None,
    };
    let result = ClassifyResult {
        hbar_prime: hbar,
        hbar_ratio: ratio,
        label: verdict.label,
        lambda_min: verdict.lambda_min,
        critical_hbar: verdict.hbar_critical * hbar_ref,
        saturated: verdict.saturated,
        rsi_satisfied: verdict.rsi_satisfied.clone(),
        purity,
    };
    let report = Report {
        command: command_echo(),
        inputs: vec![input_record(cov)?],
        tolerances: Tolerances {
            psd_tol: Some(gaussian::KLM_PSD_TOL),
            saturation_tol: Some(gaussian::SATURATION_TOL),
            mass_tol: None,
        },
        result,
    };
    emit(&report, &report_out.out)?;
    eprintln!("label          {:?}", verdict.label);
    eprintln!("lambda_min     {:.12e}", verdict.lambda_min);
    eprintln!("critical hbar  {:.12e}", verdict.hbar_critical * hbar_ref);
    eprintln!("saturated      {}", verdict.saturated);
    if let Some(p) = report.result.purity {
        eprintln!("purity         {p:.12e}");
    }
    Ok(match verdict.label {
        GaussianLabel::QuantumPure | GaussianLabel::QuantumMixed => 0,
        GaussianLabel::ClassicalOnly => 2,
        GaussianLabel::Invalid => 3,
    })
}

fn cmd_wigner(psi_path: &Path, out: &Path) -> Result<u8, CliError> {
    let psi = io::read_wavefunction(psi_path)?;
    let w = wigner_transform(&psi)?;
    io::write_wigner(out, &w)?;
    let min_value = w.values().iter().copied().fold(f64::INFINITY, f64::min);
    let max_value = w.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let result = WignerResult {
        hbar: w.hbar(),
        grid_l: w.xgrid().half_width(),
        grid_n: w.xgrid().len(),
        mass: w.mass(),
        min_value,
        max_value,
        output: out.display().to_string(),
    };
    let report = Report {
        command: command_echo(),
        inputs: vec![input_record(psi_path)?],
        tolerances: Tolerances {
            mass_tol: Some(wignergrid::MASS_TOL),
            ..Tolerances::default()
        },
        result,
    };
    emit(&report, &None)?;
    eprintln!("wrote {} ({}x{} grid, mass {:.9})", out.display(), w.xgrid().len(), w.xgrid().len(), w.mass());
    Ok(0)
}

fn run_verify(
    wigner_path: &Path,
    hbar: f64,
    tol: f64,
) -> Result<(WignerGrid, hbarscan_core::StateVerdict), CliError> {
    check_positive("hbar", hbar)?;
    check_positive("tol", tol)?;
    let w = io::read_wigner(wigner_path)?;
    let verdict = verify_state(&w, hbar, tol)?;
    Ok((w, verdict))
}

fn label_exit(label: StateLabel) -> u8 {
    match label {
        StateLabel::Pure | StateLabel::Mixed => 0,
        StateLabel::NotAState => 2,
    }
}

fn cmd_verify(
    wigner_path: &Path,
    hbar: f64,
    tol: f64,
    klm_points: Option<usize>,
    seed: u64,
    report_out: &ReportOut,
) -> Result<u8, CliError> {
    let (w, verdict) = run_verify(wigner_path, hbar, tol)?;
    let klm = match klm_points {
        Some(count) => {
            if count > 64 {
                return Err(CliError::Usage(format!(
                    "--klm-points accepts at most 64 points, got {count}"
                )));
            }
            let l = w.xgrid().half_width();
            let p_max = w.pvalues().last().copied().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<(f64, f64)> = (0..count)
                .map(|_| (rng.gen_range(-l..l), rng.gen_range(-p_max..p_max)))
                .collect();
            let passed = verifier::klm_finite_sample(&w, hbar, &points)?;
            Some(KlmResult { passed, points: count, seed })
        }
        None => None,
    };
    let result = VerifyResult {
        hbar_prime: hbar,
        label: verdict.label,
        trace: verdict.trace,
        min_eigenvalue: verdict.min_eigenvalue,
        purity: verdict.purity,
        top_eigenvalues: verdict.eigenvalues.iter().copied().take(8).collect(),
        klm_finite_sample: klm,
    };
    let report = Report {
        command: command_echo(),
        inputs: vec![input_record(wigner_path)?],
        tolerances: Tolerances {
            psd_tol: Some(tol),
            mass_tol: Some(wignergrid::MASS_TOL),
            ..Tolerances::default()
        },
        result,
    };
    emit(&report, &report_out.out)?;
    eprintln!("hbar'          {hbar}");
    eprintln!("label          {:?}", verdict.label);
    eprintln!("trace          {:.9}", verdict.trace);
    eprintln!("min eigenvalue {:.6e}", verdict.min_eigenvalue);
    eprintln!("purity         {:.9}", verdict.purity);
    if let Some(k) = &report.result.klm_finite_sample {
        eprintln!("klm finite     {}", if k.passed { "PSD" } else { "violated" });
    }
    Ok(label_exit(verdict.label))
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps).map(|i| lo + i as f64 * h).collect()
}

fn cmd_scan(
    input: &Path,
    hbar_min: f64,
    hbar_max: f64,
    steps: usize,
    tol: f64,
    report_out: &ReportOut,
) -> Result<u8, CliError> {
    check_positive("hbar-min", hbar_min)?;
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    if hbar_max <= hbar_min {
        return Err(CliError::Usage(format!(
            "--hbar-max ({hbar_max}) must exceed --hbar-min ({hbar_min})"
        )));
    }
    let values = linspace(hbar_min, hbar_max, steps);
    let is_cov = input.extension().map(|e| e == "json").unwrap_or(false);
    let (result, any_quantum) = if is_cov {
        scan_covariance(input, &values)?
    } else {
        scan_grid(input, &values, tol)?
    };
    let report = Report {
        command: command_echo(),
        inputs: vec![input_record(input)?],
        tolerances: Tolerances {
            psd_tol: Some(tol),
            saturation_tol: is_cov.then_some(gaussian::SATURATION_TOL),
            mass_tol: (!is_cov).then_some(wignergrid::MASS_TOL),
        },
        result,
    };
    emit(&report, &report_out.out)?;
    eprintln!("{:>12}  {:<14} {:>14}", "hbar'", "label", "purity");
    for row in &report.result.rows {
        let p = row.purity.map(|p| format!("{p:.9}")).unwrap_or_else(|| "-".into());
        eprintln!("{:>12.6}  {:<14} {:>14}", row.hbar_prime, row.label, p);
    }
    for t in &report.result.transitions {
        eprintln!("transition {} -> {} between {:.6} and {:.6}", t.from, t.to, t.hbar_before, t.hbar_after);
    }
    if let Some(c) = report.result.critical_hbar {
        eprintln!("critical hbar {c:.12e}");
    }
    Ok(if any_quantum { 0 } else { 2 })
}

fn scan_covariance(input: &Path, values: &[f64]) -> Result<(ScanResult, bool), CliError> {
    let (state, hbar_ref) = io::read_covariance(input)?;
    let mut rows = Vec::with_capacity(values.len());
    let mut labels: Vec<String> = Vec::with_capacity(values.len());
    let mut critical = None;
    let mut any_quantum = false;
    for &h in values {
        let verdict = classify_gaussian(&state, h / hbar_ref)?;
        critical = Some(verdict.hbar_critical * hbar_ref);
        let quantum = matches!(
            verdict.label,
            GaussianLabel::QuantumPure | GaussianLabel::QuantumMixed
        );
        any_quantum |= quantum;
        let purity = quantum.then(|| gaussian_purity(&state, h / hbar_ref)).transpose()?;
        labels.push(format!("{:?}", verdict.label));
        rows.push(ScanRow {
            hbar_prime: h,
            label: format!("{:?}", verdict.label),
            purity,
            min_eigenvalue: None,
        });
    }
    let transitions = transition_rows(values, &labels);
    Ok((
        ScanResult {
            input_kind: "covariance".into(),
            rows,
            transitions,
            critical_hbar: critical,
            decrease_evidence: None,
        },
        any_quantum,
    ))
}

fn scan_grid(input: &Path, values: &[f64], tol: f64) -> Result<(ScanResult, bool), CliError> {
    let w = io::read_wigner(input)?;
    let report = verifier::scan_hbar(&w, values, tol)?;
    let rows = report
        .verdicts
        .iter()
        .map(|v| ScanRow {
            hbar_prime: v.hbar_prime,
            label: format!("{:?}", v.label),
            purity: Some(v.purity),
            min_eigenvalue: Some(v.min_eigenvalue),
        })
        .collect();
    let transitions = report
        .transitions
        .iter()
        .map(|t| TransitionRow {
            hbar_before: t.hbar_before,
            hbar_after: t.hbar_after,
            from: format!("{:?}", t.from),
            to: format!("{:?}", t.to),
        })
        .collect();
    let any_quantum = report.verdicts.iter().any(|v| v.label != StateLabel::NotAState);
    Ok((
        ScanResult {
            input_kind: "wigner-grid".into(),
            rows,
            transitions,
            critical_hbar: None,
            decrease_evidence: Some(report.decrease_evidence()),
        },
        any_quantum,
    ))
}

fn transition_rows(values: &[f64], labels: &[String]) -> Vec<TransitionRow> {
    (1..labels.len())
        .filter(|&i| labels[i - 1] != labels[i])
        .map(|i| TransitionRow {
            hbar_before: values[i - 1],
            hbar_after: values[i],
            from: labels[i - 1].clone(),
            to: labels[i].clone(),
        })
        .collect()
}

fn cmd_spectrum(wigner_path: &Path, hbar: f64, tol: f64, report_out: &ReportOut) -> Result<u8, CliError> {
    let (_, verdict) = run_verify(wigner_path, hbar, tol)?;
    let result = SpectrumResultOut {
        hbar_prime: hbar,
        label: verdict.label,
        trace: verdict.trace,
        eigenvalues: verdict.eigenvalues.clone(),
    };
    let report = Report {
        command: command_echo(),
        inputs: vec![input_record(wigner_path)?],
        tolerances: Tolerances {
            psd_tol: Some(tol),
            mass_tol: Some(wignergrid::MASS_TOL),
            ..Tolerances::default()
        },
        result,
    };
    emit(&report, &report_out.out)?;
    eprintln!("label {:?}; trace {:.9}; top eigenvalues:", verdict.label, verdict.trace);
    for v in verdict.eigenvalues.iter().take(10) {
        eprintln!("  {v:.12e}");
    }
    Ok(label_exit(verdict.label))
}

fn cmd_purity(input: &Path, hbar: f64, tol: f64, report_out: &ReportOut) -> Result<u8, CliError> {
    check_positive("hbar", hbar)?;
    let is_cov = input.extension().map(|e| e == "json").unwrap_or(false);
    let (result, exit) = if is_cov {
        let (state, hbar_ref) = io::read_covariance(input)?;
        match gaussian_purity(&state, hbar / hbar_ref) {
            Ok(p) => (
                PurityResult {
                    hbar_prime: hbar,
                    method: "gaussian-closed-form".into(),
                    purity: Some(p),
                    quantum: true,
                },
                0,
            ),
            Err(gaussian::GaussianError::NotAQuantumState { .. }) => (
                PurityResult {
                    hbar_prime: hbar,
                    method: "gaussian-closed-form".into(),
                    purity: None,
                    quantum: false,
                },
                2,
            ),
            Err(e) => return Err(e.into()),
        }
    } else {
        let (_, verdict) = run_verify(input, hbar, tol)?;
        let quantum = verdict.label != StateLabel::NotAState;
        (
            PurityResult {
                hbar_prime: hbar,
                method: "grid-spectral".into(),
                purity: Some(verdict.purity),
                quantum,
            },
            label_exit(verdict.label),
        )
    };
    let report = Report {
        command: command_echo(),
        inputs: vec![input_record(input)?],
        tolerances: Tolerances {
            psd_tol: Some(tol),
            ..Tolerances::default()
        },
        result,
    };
    emit(&report, &report_out.out)?;
    match report.result.purity {
        Some(p) => eprintln!("purity {p:.12e}"),
        None => eprintln!("not a quantum state at hbar' = {hbar}"),
    }
    Ok(exit)
}

fn cmd_sample(kind: &SampleKind) -> Result<u8, CliError> {
    let (name, k, sigma_x, hbar, grid_n, grid_l, out) = match kind {
        SampleKind::Coherent { sigma_x, hbar, grid_n, grid_l, out } => {
            ("coherent", 0usize, *sigma_x, *hbar, *grid_n, *grid_l, out)
        }
        SampleKind::Hermite { k, sigma_x, hbar, grid_n, grid_l, out } => {
            ("hermite", *k, *sigma_x, *hbar, *grid_n, *grid_l, out)
        }
    };
    check_positive("hbar", hbar)?;
    let sigma_x = sigma_x.unwrap_or_else(|| (hbar / 2.0).sqrt());
    check_positive("sigma-x", sigma_x)?;
    let grid = PositionGrid::new(grid_l, grid_n)?;
    let psi: GridWavefunction = hermite_wavefunction(k, sigma_x, &grid, hbar)?;
    io::write_wavefunction(out, &psi)?;
    let result = SampleResult {
        kind: if name == "hermite" { format!("hermite-{k}") } else { name.into() },
        hbar,
        grid_l,
        grid_n,
        output: out.display().to_string(),
    };
    let report = Report {
        command: command_echo(),
        inputs: Vec::new(),
        tolerances: Tolerances::default(),
        result,
    };
    emit(&report, &None)?;
    eprintln!("wrote {}", out.display());
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.cmd {
        Cmd::Classify { cov, hbar, report } => cmd_classify(cov, *hbar, report),
        Cmd::Wigner { psi, out } => cmd_wigner(psi, out),
        Cmd::Verify { wigner, hbar, tol, klm_points, seed, report } => {
            cmd_verify(wigner, *hbar, *tol, *klm_points, *seed, report)
        }
        Cmd::Scan { input, hbar_min, hbar_max, steps, tol, report } => {
            cmd_scan(input, *hbar_min, *hbar_max, *steps, *tol, report)
        }
        Cmd::Spectrum { wigner, hbar, tol, report } => cmd_spectrum(wigner, *hbar, *tol, report),
        Cmd::Purity { input, hbar, tol, report } => cmd_purity(input, *hbar, *tol, report),
        Cmd::Sample { kind } => cmd_sample(kind),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
