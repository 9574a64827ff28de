//! The `zeck` command line.
//!
//! Exit codes: 0 on success, 1 on a usage or domain error (one line on
//! stderr), 2 when `verify` finds a counterexample.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use thiserror::Error;
use zeck_core::gaussian::{fardiff_stats_with, figure_profile, FardiffSource};
use zeck_core::oracle::{empirical_density_with, empirical_joint_with, verify_bijection_with};
use zeck_core::{
    decompose, exact_moments, fardiff, gauss_profile, joint_table,
    stirling_f, terms, zeck_density, zeckendorf, Convention, DecomposeError, EnumLimits,
    GaussError, OracleError, PlrsSpec,
};

use crate::dto::{
    signed_json, BijectionJson, DecompositionJson, DensityJson, FardiffStatsJson, FigureJson,
    GaussJson, JointJson, MomentJson, SeqJson, StirlingJson, ZeckJson,
};
use crate::render::DEFAULT_PRECISION;
use crate::spec_io::{parse_spec, read_spec, SpecParseError};
use crate::{tables, verify};

/// Overrides both oracle guards. Raising it can exhaust memory.
pub const MAX_ENUM_ENV: &str = "ZECK_MAX_ENUM";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spec(#[from] SpecParseError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Forced,
    Nonforced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    Oracle,
    Formula,
}

#[derive(Debug, Parser)]
#[command(
    name = "zeck",
    version,
    about = "Zeckendorf-type decompositions and summand statistics"
)]
struct Cli {
    /// Significant digits for floats.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Coefficients c_1..c_L, e.g. "2 3 1" (default "1 1", Fibonacci).
    #[arg(long, conflicts_with = "spec_file")]
    coeffs: Option<String>,
    /// File holding the coefficients as text or as {"coeffs":[...]}.
    #[arg(long)]
    spec_file: Option<PathBuf>,
}

impl SpecArgs {
    fn load(&self) -> Result<PlrsSpec, CliError> {
        Ok(match (&self.coeffs, &self.spec_file) {
            (Some(text), _) => parse_spec(text)?,
            (None, Some(path)) => read_spec(path)?,
            (None, None) => PlrsSpec::fibonacci(),
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Terms H_1..H_m of the sequence.
    Seq {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        m: usize,
    },
    /// Legal decomposition of N.
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "n-value")]
        n_value: String,
    },
    /// Zeckendorf indices of N (F_1 = 1, F_2 = 2).
    Zeck {
        #[arg(long = "n-value")]
        n_value: String,
    },
    /// Far-difference representation of N.
    Fardiff {
        #[arg(long = "n-value", allow_hyphen_values = true)]
        n_value: String,
    },
    /// Summand-count density on [H_n, H_{n+1}).
    Density {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        /// Count by enumeration instead of the binomial formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Joint counts of positive and negative far-difference summands.
    Joint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Exact moments of the summand count on [F_n, F_{n+1}).
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "nonforced")]
        convention: ConventionArg,
    },
    /// Standardized density against the standard normal.
    Gauss {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4.0)]
        half_width: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Stirling factors N_n(k), S_n(k) approximating p_{n+1}(k).
    Stirling {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Joint moments of the far-difference summand counts.
    FardiffStats {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "formula")]
        source: SourceArg,
    },
    /// Check the bijection for one n, or the whole oracle matrix.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        n: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// Density at n with the leading-term Gaussian overlay.
    Figure1 {
        #[arg(long, default_value_t = 2010)]
        n: usize,
    },
}

/// Runs the binary with real stdio and returns the exit code.
pub fn run_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "zeck: {}", line.trim_start_matches("error: "));
            return 1;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(err, "zeck: {e}");
            1
        }
    }
}

fn limits_from_env() -> Result<EnumLimits, CliError> {
    match std::env::var(MAX_ENUM_ENV) {
        Err(_) => Ok(EnumLimits::default()),
        Ok(v) => {
            let max: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_ENUM_ENV}={v:?} is not an integer")))?;
            Ok(limits_for(max))
        }
    }
}

/// Guards allowing intervals of `max` integers and far-difference indices
/// whose thresholds stay within `max`.
pub fn limits_for(max: u64) -> EnumLimits {
    let bound = BigUint::from(max);
    let mut index = 1;
    while zeck_core::fardiff_s(index as i64 + 1) <= bound {
        index += 1;
    }
    EnumLimits {
        max_interval: max,
        max_fardiff_index: index,
    }
}

fn parse_nonneg(s: &str) -> Result<BigUint, CliError> {
    BigUint::from_str(s.trim())
        .map_err(|_| CliError::Usage(format!("N must be a non-negative integer, got {s:?}")))
}

fn parse_signed(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim()).map_err(|_| CliError::Usage(format!("N must be an integer, got {s:?}")))
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format], cmd: &str) -> Result<Format, CliError> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "{cmd} does not support --format {}",
            f.to_possible_value().expect("named").get_name()
        )))
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

fn require_fibonacci(spec: &PlrsSpec, what: &str) -> Result<(), CliError> {
    if spec.is_fibonacci() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{what} has a closed form only for Fibonacci; pass --oracle"
        )))
    }
}

/// Returns `Ok(false)` when a verification failed.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    use Format::{Csv, Json, Text};
    let digits = cli.precision;
    let mut passed = true;
    let mut side: Option<Vec<u8>> = None;
    let body: Vec<u8> = match &cli.command {
        Command::Seq { spec, m } => {
            let spec = spec.load()?;
            let cache = terms(&spec, *m);
            let shown = &cache.terms()[..*m];
            match pick(cli.format, Csv, &[Csv, Json], "seq")? {
                Json => json_line(&SeqJson {
                    coeffs: spec.coeffs().to_vec(),
                    terms: shown.iter().map(|t| t.to_string()).collect(),
                })?,
                _ => {
                    let mut buf = Vec::new();
                    tables::write_seq(&mut buf, shown)?;
                    buf
                }
            }
        }
        Command::Decompose { spec, n_value } => {
            let spec = spec.load()?;
            let n = parse_nonneg(n_value)?;
            let dec = decompose(&spec, &n)?;
            match pick(cli.format, Json, &[Json, Text], "decompose")? {
                Json => json_line(&DecompositionJson::new(&dec, &n))?,
                _ => {
                    let parts: Vec<String> = dec
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, &a)| a != 0)
                        .map(|(i, a)| format!("{a}*H{}", dec.top_index() - i))
                        .collect();
                    format!("{}\n", parts.join(" + ")).into_bytes()
                }
            }
        }
        Command::Zeck { n_value } => {
            let n = parse_nonneg(n_value)?;
            let indices = zeckendorf(&n)?;
            match pick(cli.format, Json, &[Json, Text], "zeck")? {
                Json => json_line(&ZeckJson {
                    value: n.to_string(),
                    indices,
                })?,
                _ => {
                    let parts: Vec<String> = indices.iter().map(|i| format!("F{i}")).collect();
                    format!("{}\n", parts.join(" + ")).into_bytes()
                }
            }
        }
        Command::Fardiff { n_value } => {
            let n = parse_signed(n_value)?;
            let sd = fardiff(&n)?;
            match pick(cli.format, Text, &[Text, Json], "fardiff")? {
                Json => json_line(&signed_json(&sd))?,
                _ => format!("{sd}\n").into_bytes(),
            }
        }
        Command::Density { spec, n, oracle } => {
            let spec = spec.load()?;
            let format = pick(cli.format, Csv, &[Csv, Json], "density")?;
            if *oracle {
                let limits = limits_from_env()?;
                let hist = empirical_density_with(&spec, *n, &limits)?;
                let mut c = terms(&spec, n + 1);
                let normalizer = c.term(n + 1).clone() - c.term(*n).clone();
                let rows: Vec<(u64, BigUint)> =
                    hist.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect();
                if format == Json {
                    return Err(CliError::Usage(
                        "density --oracle writes csv only".into(),
                    ));
                }
                let mut buf = Vec::new();
                tables::write_density_rows(
                    &mut buf,
                    *n,
                    rows.iter().map(|(k, v)| (*k, v)),
                    &normalizer,
                    digits,
                )?;
                buf
            } else {
                require_fibonacci(&spec, "density")?;
                if *n == 0 {
                    return Err(CliError::Usage("--n must be positive".into()));
                }
                let table = zeck_density(*n);
                match format {
                    Json => json_line(&DensityJson::new(&table, digits))?,
                    _ => {
                        let mut buf = Vec::new();
                        tables::write_density(&mut buf, &table, digits)?;
                        buf
                    }
                }
            }
        }
        Command::Joint { n, oracle } => {
            let format = pick(cli.format, Csv, &[Csv, Json], "joint")?;
            if *n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            if *oracle {
                if format == Json {
                    return Err(CliError::Usage("joint --oracle writes csv only".into()));
                }
                let hist = empirical_joint_with(*n, &limits_from_env()?)?;
                let rows: Vec<(usize, usize, BigUint)> = hist
                    .into_iter()
                    .map(|((k, l), c)| (k, l, BigUint::from(c)))
                    .collect();
                let mut buf = Vec::new();
                tables::write_joint_rows(&mut buf, *n, rows.iter().map(|(k, l, c)| (*k, *l, c)))?;
                buf
            } else {
                let table = joint_table(*n);
                match format {
                    Json => json_line(&JointJson::new(&table))?,
                    _ => {
                        let mut buf = Vec::new();
                        tables::write_joint(&mut buf, &table)?;
                        buf
                    }
                }
            }
        }
        Command::Moments { n, convention } => {
            pick(cli.format, Json, &[Json], "moments")?;
            if *n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let convention = match convention {
                ConventionArg::Forced => Convention::Forced,
                ConventionArg::Nonforced => Convention::NonForced,
            };
            let report = exact_moments(&zeck_density(*n), convention);
            json_line(&MomentJson::new(&report, digits))?
        }
        Command::Gauss {
            n,
            half_width,
            step,
        } => {
            let fit = gauss_profile(*n, *half_width, *step)?;
            match pick(cli.format, Csv, &[Csv, Json], "gauss")? {
                Json => json_line(&GaussJson::new(&fit, digits))?,
                _ => {
                    let mut buf = Vec::new();
                    tables::write_gauss(&mut buf, &fit, digits)?;
                    buf
                }
            }
        }
        Command::Stirling { n, k } => {
            pick(cli.format, Json, &[Json], "stirling")?;
            let f = stirling_f(*n, *k)?;
            let exact = zeck_density(*n as usize + 1).probability(*k as usize);
            json_line(&StirlingJson::new(&f, *k, &exact, digits))?
        }
        Command::FardiffStats { n, source } => {
            pick(cli.format, Json, &[Json], "fardiff-stats")?;
            if *n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let source = match source {
                SourceArg::Oracle => FardiffSource::Oracle,
                SourceArg::Formula => FardiffSource::Formula,
            };
            let stats = fardiff_stats_with(*n, source, &limits_from_env()?)?;
            json_line(&FardiffStatsJson::new(&stats, source, digits))?
        }
        Command::Verify { spec, n, all } => {
            let format = pick(cli.format, Text, &[Text, Json], "verify")?;
            let limits = limits_from_env()?;
            if *all {
                let outcomes = verify::run_all(&limits)?;
                passed = outcomes.iter().all(|o| o.passed);
                let mut text = String::new();
                for o in &outcomes {
                    text.push_str(&o.line());
                    text.push('\n');
                }
                if format == Json {
                    return Err(CliError::Usage("verify --all writes text only".into()));
                }
                text.into_bytes()
            } else {
                let spec = spec.load()?;
                let n = n.expect("clap requires --n without --all");
                if n == 0 {
                    return Err(CliError::Usage("--n must be positive".into()));
                }
                let report = verify_bijection_with(&spec, n, &limits)?;
                passed = report.passed;
                match format {
                    Json => json_line(&BijectionJson::new(&report))?,
                    _ => format!(
                        "{} bijection [{}] n = {} ({} integers)\n",
                        if report.passed { "PASS" } else { "FAIL" },
                        spec,
                        n,
                        report.interval_size
                    )
                    .into_bytes(),
                }
            }
        }
        Command::Figure1 { n } => {
            pick(cli.format, Csv, &[Csv], "figure1")?;
            if *n < 3 {
                return Err(CliError::Usage("--n must be at least 3".into()));
            }
            let fig = figure_profile(*n);
            if cli.out.is_some() {
                side = Some(json_line(&FigureJson::new(&fig, digits))?);
            }
            let mut buf = Vec::new();
            tables::write_figure(&mut buf, &fig, digits)?;
            buf
        }
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            if let Some(summary) = side {
                out.write_all(&summary)?;
            }
        }
        None => out.write_all(&body)?,
    }
    out.flush()?;
    Ok(passed)
}
