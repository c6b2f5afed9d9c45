//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on invalid arguments or input, 2 when the
//! solver fails or the requested spread is unattainable with the given taps.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::designer::{self, DesignStatus};
use crate::error::Error;
use crate::io;
use crate::mathieu;
use crate::spreads::SpreadReport;
use crate::windows::{self, WindowFamily};

#[derive(Debug, Parser)]
#[command(name = "tfcompact", version, about = "Time-frequency spreads and maximally compact sequences")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design the maximally compact sequence for one periodic frequency spread.
    Design(DesignArgs),
    /// Report all spread measures of a sequence file.
    Analyze(AnalyzeArgs),
    /// Optimal eta_p over a grid of sigma2 values, with analytic bounds.
    Curve(CurveArgs),
    /// ce0(q; theta) on a theta grid (with --q), or a0(q) on a q grid.
    Mathieu(MathieuArgs),
    /// Spread scan of the built-in window families.
    Windows(WindowsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct DesignArgs {
    #[arg(long)]
    pub sigma2: f64,
    /// Odd tap count, at least 5.
    #[arg(long, default_value_t = designer::DEFAULT_TAPS)]
    pub taps: usize,
    #[arg(long, default_value_t = designer::DEFAULT_TOL)]
    pub tol: f64,
    /// Also write the sequence in the plain sequence file format.
    #[arg(long)]
    pub sequence: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// sigma2 grid as start:stop:points:log|lin
    #[arg(long, default_value = "0.01:10:40:log")]
    pub grid: GridSpec,
    #[arg(long, default_value_t = designer::DEFAULT_TAPS)]
    pub taps: usize,
    #[arg(long, default_value_t = designer::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct MathieuArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// theta grid when --q is given (default 0:pi:257:lin), q grid otherwise (default 0:100:101:lin)
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct WindowsArgs {
    #[command(flatten)]
    pub common: Common,
}

/// `start:stop:points:log|lin`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, points, scale] = parts.as_slice() else {
            return Err(format!("expected start:stop:points:log|lin, got {s:?}"));
        };
        let num = |v: &str| v.parse::<f64>().map_err(|_| format!("bad number {v:?} in grid"));
        let start = num(start)?;
        let stop = num(stop)?;
        let points: usize = points.parse().map_err(|_| format!("bad point count {points:?}"))?;
        let log = match *scale {
            "log" => true,
            "lin" => false,
            other => return Err(format!("grid scale must be log or lin, got {other:?}")),
        };
        if points == 0 {
            return Err("grid needs at least one point".into());
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        if log && (start <= 0.0 || stop <= 0.0) {
            return Err("log grid bounds must be positive".into());
        }
        Ok(Self {
            start,
            stop,
            points,
            log,
        })
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unattainable { .. } | Error::NoConvergence { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stdout, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    run(&config, stdout, stderr)
}

pub fn run(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Design(a) => design(a, stderr),
        Command::Analyze(a) => analyze(a),
        Command::Curve(a) => curve(a, stderr),
        Command::Mathieu(a) => mathieu_cmd(a),
        Command::Windows(a) => windows_cmd(a),
    };
    match result {
        Ok((common, text)) => match emit(&common, &text, stdout) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                1
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(common: &Common, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

type Outcome = Result<(Common, String), Failure>;

fn check_taps(taps: usize) -> Result<(), Failure> {
    if taps < 5 || taps % 2 == 0 {
        return Err(invalid(format!("--taps must be odd and at least 5, got {taps}")));
    }
    Ok(())
}

fn design(a: &DesignArgs, stderr: &mut dyn Write) -> Outcome {
    check_taps(a.taps)?;
    if !(a.sigma2 > 0.0) {
        return Err(invalid(format!("--sigma2 must be positive, got {}", a.sigma2)));
    }
    let r = designer::design_max_compact(a.sigma2, a.taps, a.tol)?;
    if r.status == DesignStatus::IncreaseTaps {
        let _ = writeln!(
            stderr,
            "warning: outer taps carry {:e} of the energy; increase --taps",
            r.tail_mass
        );
    }
    if let Some(path) = &a.sequence {
        io::write_sequence(path, &r.sequence)?;
    }
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => io::to_json(&r) + "\n",
        Format::Csv => io::sequence_csv(&r.sequence),
    };
    Ok((a.common.clone(), text))
}

fn analyze(a: &AnalyzeArgs) -> Outcome {
    let s = io::read_sequence(&a.input)?;
    let r = SpreadReport::of(&s);
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => io::to_json(&r) + "\n",
        Format::Csv => {
            let f = |v: f64| if v == f64::INFINITY { "inf".to_string() } else { v.to_string() };
            format!(
                "mu_n,delta_n2,tau_re,tau_im,delta_wp2,mu_wl,delta_wl2,eta_p,eta_l\n{},{},{},{},{},{},{},{},{}\n",
                r.mu_n,
                r.delta_n2,
                r.tau.re,
                r.tau.im,
                f(r.delta_wp2),
                r.mu_wl,
                r.delta_wl2,
                r.eta_p.map_or_else(|| "nan".to_string(), f),
                r.eta_l
            )
        }
    };
    Ok((a.common.clone(), text))
}

fn curve(a: &CurveArgs, stderr: &mut dyn Write) -> Outcome {
    check_taps(a.taps)?;
    let rows = designer::sweep_curve(&a.grid.values(), a.taps, a.tol);
    for r in &rows {
        if let Some(e) = &r.error {
            let _ = writeln!(stderr, "warning: sigma2 = {}: {e}", r.sigma2);
        }
    }
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => io::curve_csv(&rows),
        Format::Json => io::to_json(&rows) + "\n",
    };
    Ok((a.common.clone(), text))
}

fn mathieu_cmd(a: &MathieuArgs) -> Outcome {
    let format = a.common.format.unwrap_or(Format::Csv);
    let text = match a.q {
        Some(q) => {
            let grid = a.grid.clone().unwrap_or(GridSpec {
                start: 0.0,
                stop: std::f64::consts::PI,
                points: 257,
                log: false,
            });
            let m = mathieu::ce0(q, &grid.values(), 16)?;
            match format {
                Format::Csv => io::ce0_csv(&m),
                Format::Json => io::to_json(&m) + "\n",
            }
        }
        None => {
            let grid = a.grid.clone().unwrap_or(GridSpec {
                start: 0.0,
                stop: 100.0,
                points: 101,
                log: false,
            });
            let rows = grid
                .values()
                .into_iter()
                .map(|q| Ok((q, mathieu::char_value_a0(q, 16)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            match format {
                Format::Csv => io::a0_csv(&rows),
                Format::Json => io::to_json(&rows) + "\n",
            }
        }
    };
    Ok((a.common.clone(), text))
}

fn windows_cmd(a: &WindowsArgs) -> Outcome {
    let points: Vec<_> = WindowFamily::defaults()
        .iter()
        .flat_map(windows::spread_scan)
        .collect();
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => io::scan_csv(&points),
        Format::Json => {
            let rows: Vec<_> = points
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "family": p.family,
                        "param": p.param,
                        "report": p.report.as_ref().ok(),
                    })
                })
                .collect();
            io::to_json(&rows) + "\n"
        }
    };
    Ok((a.common.clone(), text))
}
