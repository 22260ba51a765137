use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use linefield::cli_report::{
    default_window, load_config, run_pipeline, sample_config, to_canonical_json, to_csv, LoadedConfig, PlotWindow,
    ReportError, MIN_GRID, PRECISION_ENV,
};
use linefield::exact_arith::format_rational;
use linefield::moments_asymptotes::{
    verify_cd_derivative_link, verify_p_from_q_identity, verify_interlacing, verify_inversion, verify_no_common_cd_root,
    VerificationReport, DEFAULT_L_MAX,
};
use linefield::sign_product::build_joint_polynomial;

/// Zeros, asymptotes and sign-product polynomials of fields from point
/// charges on a line.
#[derive(Parser, Debug)]
#[command(name = "linefield", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full analysis and write a JSON report.
    Analyze {
        config: PathBuf,
        /// Report path (default: the config's output.report, else report.json).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run the exact asymptote identity suites on their own.
    Verify {
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        lmax: usize,
        /// Write the JSON results here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace {X = 0} and {Y = 0} and write them as CSV polylines.
    Contour {
        config: PathBuf,
        /// x_lo,x_hi,y_lo,y_hi in the input frame.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<PlotWindow>,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Directory for zeroset_X.csv and zeroset_Y.csv.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Export the sign-product polynomial, one term per line.
    Poly {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Overrides {
    #[arg(long)]
    precision: Option<u32>,
    /// Exact, e.g. 1e-12 or 1/1000.
    #[arg(long)]
    tolerance: Option<String>,
    #[arg(long)]
    lmax: Option<usize>,
}

fn parse_window(s: &str) -> Result<PlotWindow, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<_, _>>()?;
    let [x_lo, x_hi, y_lo, y_hi] = v[..] else {
        return Err("expected x_lo,x_hi,y_lo,y_hi".into());
    };
    Ok(PlotWindow { x_lo, x_hi, y_lo, y_hi })
}

/// A run that completed but tripped an internal check.
#[derive(Debug)]
struct Violation(Vec<String>);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant violation: {}", self.0.join("; "))
    }
}

impl std::error::Error for Violation {}

fn env_precision() -> Result<Option<u32>> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => Ok(Some(v.trim().parse().with_context(|| format!("{PRECISION_ENV}='{v}' is not a bit count"))?)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(anyhow!("{PRECISION_ENV}: {e}")),
    }
}

fn load(path: &Path, overrides: Option<&Overrides>) -> Result<LoadedConfig, ReportError> {
    let default_precision = env_precision().map_err(|e| ReportError::Invalid(e.to_string()))?;
    let cfg = load_config(path, default_precision)?;
    let Some(o) = overrides else { return Ok(cfg) };
    let mut raw = cfg.raw;
    if o.precision.is_some() {
        raw.precision_bits = o.precision;
    }
    if o.tolerance.is_some() {
        raw.tolerance = o.tolerance.clone();
    }
    if o.lmax.is_some() {
        raw.l_max = o.lmax;
    }
    raw.validate(default_precision)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn analyze(config: &Path, out: Option<PathBuf>, overrides: &Overrides) -> Result<()> {
    let cfg = load(config, Some(overrides))?;
    let report = run_pipeline(&cfg)?;
    let path = out
        .or_else(|| cfg.raw.output.as_ref().and_then(|o| o.report.clone()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("report.json"));
    write(&path, &report.to_json())?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "{} zero(s), completeness {:?}, report at {}",
        report.zeros.len(),
        report.completeness,
        path.display()
    );
    let bad = report.invariant_violations();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Violation(bad).into())
    }
}

fn verify(lmax: usize, out: Option<PathBuf>) -> Result<()> {
    if lmax == 0 {
        bail!(ReportError::Invalid("--lmax must be at least 1".into()));
    }
    let suites: [fn(usize) -> VerificationReport; 5] = [
        verify_interlacing,
        verify_p_from_q_identity,
        verify_inversion,
        verify_no_common_cd_root,
        verify_cd_derivative_link,
    ];
    let reports: Vec<VerificationReport> = suites.iter().map(|f| f(lmax)).collect();
    for r in &reports {
        eprintln!("{:<28} {}", r.suite, if r.passed { "ok" } else { "FAILED" });
    }
    let json = to_canonical_json(&reports);
    match out {
        Some(p) => write(&p, &json)?,
        None => print!("{json}"),
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.suite.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Violation(failed).into())
    }
}

fn contour(config: &Path, window: Option<PlotWindow>, grid: usize, out_dir: &Path) -> Result<()> {
    let cfg = load(config, None)?;
    if grid < MIN_GRID {
        bail!(ReportError::Invalid(format!("--grid must be at least {MIN_GRID}")));
    }
    let window = window.unwrap_or_else(|| default_window(&cfg, 5.0));
    let ls = sample_config(&cfg, &window, grid)?;
    let output = cfg.raw.output.clone().unwrap_or_default();
    let px = output.contour_x.map(PathBuf::from).unwrap_or_else(|| out_dir.join("zeroset_X.csv"));
    let py = output.contour_y.map(PathBuf::from).unwrap_or_else(|| out_dir.join("zeroset_Y.csv"));
    let (tx, ty) = (to_csv(&ls.x), to_csv(&ls.y));
    write(&px, &tx)?;
    write(&py, &ty)?;
    for n in &ls.notes {
        eprintln!("note: {n}");
    }
    eprintln!(
        "{} X polyline(s) -> {}, {} Y polyline(s) -> {}",
        ls.x.polylines.len(),
        px.display(),
        ls.y.polylines.len(),
        py.display()
    );
    Ok(())
}

fn poly(config: &Path, out: Option<PathBuf>) -> Result<()> {
    let cfg = load(config, None)?;
    let p = build_joint_polynomial(&cfg.system).map_err(|e| ReportError::Invalid(e.to_string()))?;
    let path = out.or_else(|| cfg.raw.output.as_ref().and_then(|o| o.poly.clone()).map(PathBuf::from));
    let shift = format_rational(&cfg.shift);
    if shift != "0" {
        eprintln!("note: polynomial is in the normalized frame (positions shifted by {shift})");
    }
    eprintln!("degree {} (bound 3M 2^M = {})", p.degree, p.degree_bound());
    match path {
        Some(path) => write(&path, &p.to_text()),
        None => {
            print!("{}", p.to_text());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze { config, out, overrides } => analyze(&config, out, &overrides),
        Command::Verify { lmax, out } => verify(lmax, out),
        Command::Contour { config, window, grid, out_dir } => contour(&config, window, grid, &out_dir),
        Command::Poly { config, out } => poly(&config, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Violation>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
