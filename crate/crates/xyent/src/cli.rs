//! Command-line front end: classification, entropy by every route, grid
//! scans, contour grids, and iso-curve sampling, as CSV or JSON for external
//! plotting.
//!
//! Exit codes: 0 success, 2 domain error, 3 numerical failure. All floats
//! are printed with 12 significant digits; critical-point markers are an
//! empty entropy cell plus the `divergent` column. Identical invocations
//! produce byte-identical output.

use crate::curves::{self, CurveBranch, IsoCurve};
use crate::entropy::{self, EntropyValue, Method, Outcome};
use crate::error::{Error, Result};
use crate::oracle;
use crate::phase::{self, ModelPoint, Region};
use clap::{Parser, Subcommand, ValueEnum};
use std::f64::consts::LN_2;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "xyent",
    version,
    about = "Block entanglement entropy of the XY spin chain",
    long_about = "Computes the asymptotic block entanglement entropy of the XY chain across \
                  its phase diagram, samples the constant-entropy ellipses and hyperbolas, \
                  and cross-checks against an exact finite-size free-fermion computation."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a point and report its modulus data as one JSON record
    Classify {
        #[arg(long = "h", allow_hyphen_values = true)]
        h: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        /// Treat (h, gamma) as staggered-field coordinates (h', gamma')
        #[arg(long)]
        staggered: bool,
    },
    /// Evaluate the entropy at one point by the chosen route
    Entropy {
        #[arg(long = "h", allow_hyphen_values = true)]
        h: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_enum, default_value = "closed")]
        method: CliMethod,
        /// Block size for the finite-size oracle route
        #[arg(long = "L", default_value_t = 100)]
        block: usize,
        #[arg(long)]
        staggered: bool,
        /// Report entropy in bits instead of nats
        #[arg(long)]
        bits: bool,
    },
    /// Sweep h and/or gamma; one CSV/JSON row per grid point, h-major order
    Scan {
        /// Swept h axis as start:stop:count
        #[arg(long, conflicts_with = "h")]
        h_range: Option<AxisRange>,
        /// Fixed h value
        #[arg(long = "h", allow_hyphen_values = true)]
        h: Option<f64>,
        /// Swept gamma axis as start:stop:count
        #[arg(long, conflicts_with = "gamma")]
        gamma_range: Option<AxisRange>,
        /// Fixed gamma value
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long, value_enum, default_value = "closed")]
        method: CliMethod,
        #[arg(long = "L", default_value_t = 100)]
        block: usize,
        #[arg(long)]
        staggered: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        bits: bool,
    },
    /// Entropy matrix over a rectangular window, for contouring
    Contour {
        #[arg(long)]
        h_range: AxisRange,
        #[arg(long)]
        gamma_range: AxisRange,
        /// Write a JSON sidecar with the iso-curve kappa ranges crossing the window
        #[arg(long)]
        sidecar: Option<std::path::PathBuf>,
        #[arg(long)]
        bits: bool,
    },
    /// Sample one constant-entropy curve
    Curve {
        #[arg(long)]
        kappa: f64,
        #[arg(long, value_enum)]
        branch: CliBranch,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Clip for the unbounded hyperbola branch
        #[arg(long, default_value_t = curves::DEFAULT_H_MAX)]
        h_max: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        bits: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMethod {
    Closed,
    Series,
    Kappa,
    Oracle,
    Asymptotic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliBranch {
    Case2,
    Case1a,
    Case1b,
    Boundary,
}

impl From<CliBranch> for CurveBranch {
    fn from(b: CliBranch) -> Self {
        match b {
            CliBranch::Case2 => CurveBranch::Case2,
            CliBranch::Case1a => CurveBranch::Case1a,
            CliBranch::Case1b => CurveBranch::Case1b,
            CliBranch::Boundary => CurveBranch::Boundary,
        }
    }
}

/// A swept axis `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct AxisRange {
    start: f64,
    stop: f64,
    count: usize,
}

impl FromStr for AxisRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:count, got '{s}'"));
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("bad start: {e}"))?;
        let stop: f64 = parts[1].parse().map_err(|e| format!("bad stop: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("bad count: {e}"))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err("range endpoints must be finite".into());
        }
        if count < 2 {
            return Err(format!("count must be at least 2, got {count}"));
        }
        Ok(AxisRange { start, stop, count })
    }
}

impl AxisRange {
    fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.stop
                } else {
                    // multiply before dividing so integer-ratio grids hit
                    // interior anchors (e.g. h = 2) exactly
                    self.start + (i as f64 * (self.stop - self.start)) / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// 12 significant digits, round-trippable, valid as both CSV cell and JSON
/// number.
fn fmt_g12(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_default()
}

fn json_opt(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_else(|| "null".into())
}

/// Fixed scan/curve row schema: `h,gamma,region,k,kappa,entropy,divergent`.
struct Row {
    h: f64,
    gamma: f64,
    region: Region,
    k: Option<f64>,
    kappa: Option<f64>,
    entropy: Option<f64>,
    divergent: bool,
}

pub const ROW_HEADER: &str = "h,gamma,region,k,kappa,entropy,divergent";

impl Row {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt_g12(self.h),
            fmt_g12(self.gamma),
            self.region,
            fmt_opt(self.k),
            fmt_opt(self.kappa),
            fmt_opt(self.entropy),
            self.divergent
        )
    }

    fn json(&self) -> String {
        format!(
            "{{\"h\":{},\"gamma\":{},\"region\":\"{}\",\"k\":{},\"kappa\":{},\"entropy\":{},\"divergent\":{}}}",
            fmt_g12(self.h),
            fmt_g12(self.gamma),
            self.region,
            json_opt(self.k),
            json_opt(self.kappa),
            json_opt(self.entropy),
            self.divergent
        )
    }
}

fn unit_scale(bits: bool) -> f64 {
    if bits {
        LN_2
    } else {
        1.0
    }
}

/// Maps staggered input coordinates onto the uniform model; all staggered
/// output is the uniform output at the mapped point.
fn resolve_point(h: f64, gamma: f64, staggered: bool) -> Result<ModelPoint> {
    if staggered {
        let (image, _) = phase::staggered_to_uniform(ModelPoint::staggered(h, gamma))?;
        Ok(image)
    } else {
        Ok(ModelPoint::new(h, gamma))
    }
}

fn entropy_by_method(
    p: ModelPoint,
    region: Region,
    method: CliMethod,
    block: usize,
) -> Result<EntropyValue> {
    match method {
        CliMethod::Closed => entropy::entropy_closed_form(p),
        CliMethod::Series => entropy::entropy_series(p, entropy::SERIES_TOL_DEFAULT),
        CliMethod::Kappa => match region {
            Region::FactorizationBoundary => Ok(EntropyValue {
                outcome: Outcome::Finite(LN_2),
                method: Method::Kappa,
                err_estimate: None,
            }),
            Region::IsotropicFree => Ok(EntropyValue {
                outcome: Outcome::Finite(0.0),
                method: Method::Kappa,
                err_estimate: None,
            }),
            _ => entropy::entropy_from_kappa(curves::kappa_of_point(p)?, region),
        },
        CliMethod::Oracle => Ok(EntropyValue {
            outcome: Outcome::Finite(oracle::block_entropy_finite(p, block, None)?),
            method: Method::Oracle,
            err_estimate: None,
        }),
        CliMethod::Asymptotic => match region {
            Region::Case1b => entropy::asymptotic_near_xx(p),
            Region::Case1a => entropy::asymptotic_near_h2_below(p),
            Region::Case2 => entropy::asymptotic_near_h2_above(p),
            other => Err(Error::Domain(format!(
                "no near-critical expansion applies in region {other}"
            ))),
        },
    }
}

fn scan_row(p: ModelPoint, method: CliMethod, block: usize, scale: f64) -> Result<Row> {
    let region = phase::classify(p)?;
    let k = phase::elliptic_parameter(p).ok().map(|d| d.k);
    let kappa = match region {
        Region::Case2 | Region::Case1a | Region::Case1b | Region::FactorizationBoundary => {
            Some(curves::kappa_of_point(p)?)
        }
        _ => None,
    };
    // critical rows carry markers, never failures
    let (entropy_cell, divergent) = if region.is_critical() {
        (
            None,
            matches!(region, Region::CriticalH2 | Region::CriticalXX),
        )
    } else {
        let value = entropy_by_method(p, region, method, block)?;
        (value.value().map(|v| v / scale), value.is_divergent())
    };
    Ok(Row {
        h: p.h,
        gamma: p.gamma,
        region,
        k,
        kappa,
        entropy: entropy_cell,
        divergent,
    })
}

fn cmd_classify(h: f64, gamma: f64, staggered: bool) -> Result<String> {
    let p = resolve_point(h, gamma, staggered)?;
    let region = phase::classify(p)?;
    let data = phase::elliptic_parameter(p).ok();
    let kappa = curves::kappa_of_point(p).ok();
    let mut out = String::from("{");
    write!(out, "\"h\":{},\"gamma\":{}", fmt_g12(h), fmt_g12(gamma)).unwrap();
    if staggered {
        write!(
            out,
            ",\"h_uniform\":{},\"gamma_uniform\":{},\"coupling\":{}",
            fmt_g12(p.h),
            fmt_g12(p.gamma),
            fmt_g12(p.gamma)
        )
        .unwrap();
    }
    let tau0 = data.map(|d| d.tau0).filter(|t| t.is_finite());
    writeln!(
        out,
        ",\"region\":\"{}\",\"k\":{},\"k_prime\":{},\"tau0\":{},\"kappa\":{}}}",
        region,
        json_opt(data.map(|d| d.k)),
        json_opt(data.map(|d| d.k_prime)),
        json_opt(tau0),
        json_opt(kappa)
    )
    .unwrap();
    Ok(out)
}

fn cmd_entropy(
    h: f64,
    gamma: f64,
    method: CliMethod,
    block: usize,
    staggered: bool,
    bits: bool,
) -> Result<String> {
    let p = resolve_point(h, gamma, staggered)?;
    let region = phase::classify(p)?;
    let scale = unit_scale(bits);
    // the total routes report critical points as markers, not failures
    let value = if region.is_critical() && matches!(method, CliMethod::Closed | CliMethod::Kappa) {
        entropy::entropy_closed_form(p)?
    } else {
        entropy_by_method(p, region, method, block)?
    };
    let method_name = value.method.name();
    let record = match value.outcome {
        Outcome::Finite(v) => format!(
            "{{\"entropy\":{},\"method\":\"{}\",\"err_estimate\":{}}}\n",
            fmt_g12(v / scale),
            method_name,
            json_opt(value.err_estimate.map(|e| e / scale))
        ),
        Outcome::Divergent => format!("{{\"divergent\":true,\"method\":\"{method_name}\"}}\n"),
        Outcome::Undefined => format!("{{\"undefined\":true,\"method\":\"{method_name}\"}}\n"),
    };
    Ok(record)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    h_range: Option<AxisRange>,
    h_fixed: Option<f64>,
    gamma_range: Option<AxisRange>,
    gamma_fixed: Option<f64>,
    method: CliMethod,
    block: usize,
    staggered: bool,
    format: Format,
    bits: bool,
) -> Result<String> {
    let hs = match (h_range, h_fixed) {
        (Some(r), None) => r.values(),
        (None, Some(v)) => vec![v],
        (None, None) => return Err(Error::Domain("provide --h or --h-range".into())),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let gammas = match (gamma_range, gamma_fixed) {
        (Some(r), None) => r.values(),
        (None, Some(v)) => vec![v],
        (None, None) => return Err(Error::Domain("provide --gamma or --gamma-range".into())),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    if hs.len() == 1 && gammas.len() == 1 {
        return Err(Error::Domain(
            "nothing to sweep: give --h-range and/or --gamma-range".into(),
        ));
    }
    let scale = unit_scale(bits);
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(ROW_HEADER);
        out.push('\n');
    }
    for &h in &hs {
        for &gamma in &gammas {
            let p = resolve_point(h, gamma, staggered)?;
            let row = scan_row(p, method, block, scale)?;
            out.push_str(&match format {
                Format::Csv => row.csv(),
                Format::Json => row.json(),
            });
            out.push('\n');
        }
    }
    Ok(out)
}

fn cmd_contour(
    h_range: AxisRange,
    gamma_range: AxisRange,
    sidecar: Option<std::path::PathBuf>,
    bits: bool,
) -> Result<String> {
    let hs = h_range.values();
    let gammas = gamma_range.values();
    let scale = unit_scale(bits);

    let mut out = String::from("gamma\\h");
    for &h in &hs {
        out.push(',');
        out.push_str(&fmt_g12(h));
    }
    out.push('\n');

    // kappa ranges of curves crossing the window, per branch
    let mut ranges: std::collections::BTreeMap<&'static str, (f64, f64)> =
        std::collections::BTreeMap::new();

    for &gamma in &gammas {
        out.push_str(&fmt_g12(gamma));
        for &h in &hs {
            let p = ModelPoint::new(h, gamma);
            let region = phase::classify(p)?;
            let cell = if region.is_critical() {
                None
            } else {
                entropy::entropy_closed_form(p)?.value().map(|v| v / scale)
            };
            out.push(',');
            out.push_str(&fmt_opt(cell));
            if let Ok(kappa) = curves::kappa_of_point(p) {
                let entry = ranges.entry(region.name()).or_insert((kappa, kappa));
                entry.0 = entry.0.min(kappa);
                entry.1 = entry.1.max(kappa);
            }
        }
        out.push('\n');
    }

    if let Some(path) = sidecar {
        let mut doc = String::from("{\"branches\":[");
        for (i, (branch, (lo, hi))) in ranges.iter().enumerate() {
            if i > 0 {
                doc.push(',');
            }
            write!(
                doc,
                "{{\"branch\":\"{branch}\",\"kappa_min\":{},\"kappa_max\":{}}}",
                fmt_g12(*lo),
                fmt_g12(*hi)
            )
            .unwrap();
        }
        doc.push_str("]}\n");
        std::fs::write(&path, doc)
            .map_err(|e| Error::Domain(format!("cannot write sidecar {}: {e}", path.display())))?;
    }
    Ok(out)
}

fn cmd_curve(
    kappa: f64,
    branch: CliBranch,
    samples: usize,
    h_max: f64,
    format: Format,
    bits: bool,
) -> Result<String> {
    let curve = IsoCurve::new(kappa, branch.into())?;
    let points = curves::sample_curve_to(curve, samples, h_max)?;
    let modulus = curves::modulus_of_kappa(kappa, curve.branch)?;
    let value = curve
        .entropy()?
        .value()
        .expect("iso-curves carry finite entropy")
        / unit_scale(bits);
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(ROW_HEADER);
        out.push('\n');
    }
    for p in points {
        let row = Row {
            h: p.h,
            gamma: p.gamma,
            region: phase::classify(p)?,
            k: Some(modulus.k),
            kappa: Some(kappa),
            entropy: Some(value),
            divergent: false,
        };
        out.push_str(&match format {
            Format::Csv => row.csv(),
            Format::Json => row.json(),
        });
        out.push('\n');
    }
    Ok(out)
}

fn dispatch(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Classify {
            h,
            gamma,
            staggered,
        } => cmd_classify(h, gamma, staggered),
        Command::Entropy {
            h,
            gamma,
            method,
            block,
            staggered,
            bits,
        } => cmd_entropy(h, gamma, method, block, staggered, bits),
        Command::Scan {
            h_range,
            h,
            gamma_range,
            gamma,
            method,
            block,
            staggered,
            format,
            bits,
        } => cmd_scan(
            h_range,
            h,
            gamma_range,
            gamma,
            method,
            block,
            staggered,
            format,
            bits,
        ),
        Command::Contour {
            h_range,
            gamma_range,
            sidecar,
            bits,
        } => cmd_contour(h_range, gamma_range, sidecar, bits),
        Command::Curve {
            kappa,
            branch,
            samples,
            h_max,
            format,
            bits,
        } => cmd_curve(kappa, branch, samples, h_max, format, bits),
    }
}

/// Parses the process arguments, runs the command, prints the output, and
/// returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Numerical(_) => 3,
                _ => 2,
            }
        }
    }
}
