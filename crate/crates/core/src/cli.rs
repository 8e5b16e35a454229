//! Command-line front end: `verify`, `table`, `eval`, `mapcount`.
//!
//! Exit codes: 0 success, 1 a verification sweep found a failing point,
//! 2 usage, domain or input errors.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::hypergeom::lhs_direct;
use crate::identity::{
    check_identity, lhs_fast, map_count, rhs_direct, rhs_fast, IdentityPoint, MapCoefficients,
    Mode, VerifyReport,
};
use crate::triangles::{Triangle, TriangleKind};

pub const PARALLELISM_ENV: &str = "HYPBINOM_PARALLELISM";

/// Inclusive integer range written `a..b` (or a single `a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusiveRange {
    pub lo: u64,
    pub hi: u64,
}

impl InclusiveRange {
    pub fn count(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once("..").unwrap_or((s, s));
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid range bound {t:?} in {s:?}"))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!(
                "empty range {s:?}: lower bound exceeds upper bound"
            ));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "hypbinom",
    version,
    about = "Exact checks of a terminating 2F1 / binomial-sum identity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the identity on a grid of (N, j).
    Verify(VerifyArgs),
    /// Dump a coefficient triangle.
    Table(TableArgs),
    /// Evaluate one or both sides at a single point.
    Eval(EvalArgs),
    /// Evaluate the map-count formula with coefficients from a JSON file.
    Mapcount(MapcountArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Vertex-count range, inclusive.
    #[arg(long = "j", default_value = "1..10")]
    pub j: InclusiveRange,
    /// N range, inclusive; N >= 1.
    #[arg(long = "n", default_value = "1..50")]
    pub n: InclusiveRange,
    #[arg(long, value_enum, default_value_t = Mode::Fast)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, env = PARALLELISM_ENV, value_parser = clap::value_parser!(u64).range(1..))]
    pub parallelism: Option<u64>,
    /// Record per-point timings (otherwise reported as 0 so output is reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum, ignore_case = true)]
    pub kind: TriangleKind,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jmax: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Lhs,
    Rhs,
    Both,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub side: Side,
    #[arg(value_name = "N")]
    pub n: u64,
    #[arg(value_name = "J")]
    pub j: u64,
    /// Use the falling-basis polynomials instead of direct summation.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Args)]
pub struct MapcountArgs {
    /// JSON file `{ "nu": int, "g": int, "a": ["p/q", ...] }`.
    pub coeff_file: PathBuf,
    #[arg(long = "j", value_parser = clap::value_parser!(u64).range(1..))]
    pub j: u64,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub j: InclusiveRange,
    pub n: InclusiveRange,
    pub mode: Mode,
    pub parallelism: usize,
    pub output: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub timing: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n.lo == 0 {
            return Err("N = 0 is outside the identity's domain; N ranges must start at 1".into());
        }
        if self.parallelism == 0 {
            return Err("parallelism must be at least 1".into());
        }
        Ok(())
    }

    pub fn grid_size(&self) -> u64 {
        self.j.count() * self.n.count()
    }
}

impl TryFrom<VerifyArgs> for SweepConfig {
    type Error = String;

    fn try_from(args: VerifyArgs) -> Result<Self, String> {
        let parallelism = match args.parallelism {
            Some(p) => p as usize,
            None => std::thread::available_parallelism().map_or(1, usize::from),
        };
        let config = SweepConfig {
            j: args.j,
            n: args.n,
            mode: args.mode,
            parallelism,
            output: args.format,
            output_path: args.out,
            timing: args.timing,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Runs the grid, one task per `j`, and returns reports ordered by `(j, N)`.
pub fn run_sweep(config: &SweepConfig) -> Vec<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .expect("thread pool");
    let per_j: Vec<Vec<VerifyReport>> = pool.install(|| {
        config
            .j
            .iter()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|j| {
                config
                    .n
                    .iter()
                    .map(|n| {
                        let point = IdentityPoint::new(n, j).expect("validated N >= 1");
                        check_identity(point, config.mode)
                    })
                    .collect()
            })
            .collect()
    });
    per_j.into_iter().flatten().collect()
}

#[derive(Serialize)]
struct ReportRecord {
    #[serde(rename = "N")]
    n: u64,
    j: u64,
    lhs: String,
    rhs: String,
    equal: bool,
    micros: u64,
}

fn record(report: &VerifyReport, timing: bool) -> ReportRecord {
    ReportRecord {
        n: report.point.n(),
        j: report.point.j(),
        lhs: report.lhs.to_string(),
        rhs: report.rhs.to_string(),
        equal: report.equal,
        micros: if timing {
            report.elapsed.as_micros() as u64
        } else {
            0
        },
    }
}

/// Renders reports; JSON and CSV output depend only on the reports' values.
pub fn render_reports(reports: &[VerifyReport], format: OutputFormat, timing: bool) -> String {
    match format {
        OutputFormat::Json => {
            let records: Vec<ReportRecord> = reports.iter().map(|r| record(r, timing)).collect();
            let mut text = serde_json::to_string_pretty(&records).expect("reports serialize");
            text.push('\n');
            text
        }
        OutputFormat::Csv => {
            let mut text = String::from("N,j,lhs,rhs,equal,micros\n");
            for r in reports.iter().map(|r| record(r, timing)) {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n, r.j, r.lhs, r.rhs, r.equal, r.micros
                ));
            }
            text
        }
        OutputFormat::Plain => {
            let mut text = String::new();
            for r in reports {
                text.push_str(&format!(
                    "N={} j={} lhs={} rhs={} equal={}",
                    r.point.n(),
                    r.point.j(),
                    r.lhs,
                    r.rhs,
                    r.equal
                ));
                if timing {
                    text.push_str(&format!(" micros={}", r.elapsed.as_micros()));
                }
                text.push('\n');
            }
            text
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

pub fn cmd_verify(
    config: &SweepConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<i32> {
    let start = Instant::now();
    let reports = run_sweep(config);
    let wall = start.elapsed();
    let failing: Vec<&VerifyReport> = reports.iter().filter(|r| !r.equal).collect();

    let mut text = render_reports(&reports, config.output, config.timing);
    let summary = format!(
        "{} points ({} j x {} N), mode {:?}: {} verified, {} failing, {:.3} s",
        config.grid_size(),
        config.j.count(),
        config.n.count(),
        config.mode,
        reports.len() - failing.len(),
        failing.len(),
        wall.as_secs_f64()
    );
    if config.output == OutputFormat::Plain {
        text.push_str(&summary);
        text.push('\n');
    } else {
        writeln!(stderr, "{summary}")?;
    }
    emit(&text, config.output_path.as_ref(), stdout)?;

    for r in &failing {
        writeln!(
            stderr,
            "FAIL {}: lhs={} rhs={} fast={:?}",
            r.point, r.lhs, r.rhs, r.fast
        )?;
    }
    Ok(if failing.is_empty() { 0 } else { 1 })
}

pub fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let triangle = Triangle::build(args.kind, args.jmax as usize)?;
    let text = match args.format {
        OutputFormat::Csv => triangle.to_csv(),
        OutputFormat::Json => triangle.to_json() + "\n",
        OutputFormat::Plain => {
            let mut text = String::new();
            for (idx, row) in triangle.rows().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                text.push_str(&format!(
                    "{}({}): {}\n",
                    triangle.kind(),
                    idx + 1,
                    cells.join(" ")
                ));
            }
            text
        }
    };
    emit(&text, args.out.as_ref(), stdout)?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let point = IdentityPoint::new(args.n, args.j)?;
    let (n, j) = (point.n(), point.j());
    let lhs = || {
        if args.fast {
            Ok(lhs_fast(n, j))
        } else {
            lhs_direct(n, j)
        }
    };
    let rhs = || {
        if args.fast {
            rhs_fast(n, j)
        } else {
            rhs_direct(n, j)
        }
    };
    match args.side {
        Side::Lhs => writeln!(stdout, "{}", lhs()?)?,
        Side::Rhs => writeln!(stdout, "{}", rhs())?,
        Side::Both => {
            let (l, r) = (lhs()?, rhs());
            writeln!(stdout, "lhs={l} rhs={r} equal={}", l == r)?;
        }
    }
    Ok(())
}

pub fn cmd_mapcount(args: &MapcountArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.coeff_file)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.coeff_file.display())))?;
    let spec = MapCoefficients::from_json(&text)?.with_vertices(args.j)?;
    writeln!(stdout, "{}", map_count(&spec)?)?;
    Ok(())
}

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Input(String),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Input(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(args) => match SweepConfig::try_from(args) {
            Ok(config) => cmd_verify(&config, stdout, stderr).map_err(CliError::Io),
            Err(msg) => Err(CliError::Input(msg)),
        },
        Command::Table(args) => cmd_table(&args, stdout).map(|()| 0),
        Command::Eval(args) => cmd_eval(&args, stdout).map(|()| 0),
        Command::Mapcount(args) => cmd_mapcount(&args, stdout).map(|()| 0),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
