//! Command-line driver.
//!
//! Precedence for every setting: built-in default < config file <
//! `LEVYSLAB_OUT` (output directory only) < command-line flag.

mod emit;
mod svg;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use crate::operators::{FractionalOrders, Grid1D};
use crate::verify::{SymbolChoice, VerifyOptions};

pub use emit::{emit_eig, emit_evolve, emit_mlf, run_verify};

pub const ENV_OUT: &str = "LEVYSLAB_OUT";
pub const DEFAULT_OUT: &str = "levyslab-out";
const DEFAULT_Z_LIST: [f64; 5] = [0.0, 0.25, 0.5, 1.0, 2.0];

/// Failure modes with their pinned exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parity(f64),
    VerifyFailed,
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed | CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Parity(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Parity(e) => write!(
                f,
                "initial condition is not odd: even part reaches {e:e}; symmetrize or use an odd profile"
            ),
            CliError::VerifyFailed => write!(f, "verification failed"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Parity { even_part } => CliError::Parity(even_part),
            crate::Error::Domain(m) | crate::Error::Grid(m) => CliError::Usage(m),
            other => CliError::Compute(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Odd,
    Even,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Mlf { gamma: f64, delta: f64, z: Complex64 },
    Eig { family: Family, modes: usize, svg: bool },
    Evolve { u0: String },
    Verify { quick: bool, symbol: SymbolChoice },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Mlf { .. } => "mlf",
            Command::Eig { .. } => "eig",
            Command::Evolve { .. } => "evolve",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Fully resolved and validated run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub beta: f64,
    pub alpha: f64,
    pub half_width: f64,
    pub wavenumber: f64,
    pub omega_beta: f64,
    pub n_grid: usize,
    pub mode_cutoff: usize,
    pub z_list: Vec<f64>,
    pub output_path: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    /// `γ = β − 1`.
    pub fn gamma(&self) -> f64 {
        self.beta - 1.0
    }

    pub fn orders(&self) -> FractionalOrders {
        FractionalOrders::new(self.alpha, self.beta).expect("validated at parse time")
    }

    pub fn grid(&self) -> Grid1D {
        Grid1D::new(self.half_width, self.n_grid).expect("validated at parse time")
    }
}

fn decimal(s: &str) -> Result<f64, String> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if body.is_empty() || !digits(int) || !digits(frac) || (int.is_empty() && frac.is_empty()) {
        return Err(format!("'{s}' is not a plain decimal number"));
    }
    s.parse::<f64>().map_err(|e| e.to_string())
}

fn count(s: &str) -> Result<usize, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("'{s}' is not a non-negative integer"));
    }
    s.parse::<usize>().map_err(|e| e.to_string())
}

fn seed_value(s: &str) -> Result<u64, String> {
    count(s).map(|v| v as u64)
}

#[derive(Debug, Parser)]
#[command(name = "levyslab", version, about = "Fractional Schrödinger slab toolkit")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Space order β in (1, 2].
    #[arg(long, global = true, value_parser = decimal)]
    beta: Option<f64>,
    /// Time order α in (0, 1).
    #[arg(long, global = true, value_parser = decimal)]
    alpha: Option<f64>,
    /// Slab half-width L.
    #[arg(long = "L", global = true, value_parser = decimal)]
    half_width: Option<f64>,
    /// Paraxial wavenumber k.
    #[arg(long, global = true, value_parser = decimal, allow_hyphen_values = true)]
    k: Option<f64>,
    /// ω_β = ω/K_β.
    #[arg(long, global = true, value_parser = decimal, allow_hyphen_values = true)]
    omega_beta: Option<f64>,
    /// Grid points N (power of two).
    #[arg(long, global = true, value_parser = count)]
    n_grid: Option<usize>,
    /// Mode cutoff M.
    #[arg(long, global = true, value_parser = count)]
    mode_cutoff: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_parser = seed_value)]
    seed: Option<u64>,
    /// Flat key = value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Evaluate E_{γ,δ}(z).
    Mlf {
        #[arg(long, value_parser = decimal)]
        gamma: f64,
        #[arg(long, value_parser = decimal)]
        delta: Option<f64>,
        #[arg(long, value_parser = decimal, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, value_parser = decimal, allow_hyphen_values = true)]
        z_im: Option<f64>,
    },
    /// Box eigenmodes and their spectral check.
    Eig {
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long, value_parser = count)]
        modes: Option<usize>,
        /// Also write an SVG plot per mode.
        #[arg(long)]
        svg: bool,
    },
    /// Field evolution u(z, r).
    Evolve {
        /// mode:K, triangle, odd-gauss, gauss or file:PATH.
        #[arg(long)]
        u0: Option<String>,
        /// Comma-separated z values.
        #[arg(long = "z", value_parser = decimal, value_delimiter = ',')]
        z_list: Option<Vec<f64>>,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Fast subset.
        #[arg(long)]
        quick: bool,
        #[arg(long, hide = true)]
        mutate_symbol: bool,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    beta: Option<f64>,
    alpha: Option<f64>,
    #[serde(rename = "L")]
    half_width: Option<f64>,
    k: Option<f64>,
    omega_beta: Option<f64>,
    n_grid: Option<usize>,
    mode_cutoff: Option<usize>,
    z_list: Option<Vec<f64>>,
    output_path: Option<PathBuf>,
    seed: Option<u64>,
    modes: Option<usize>,
    family: Option<Family>,
    u0: Option<String>,
}

fn clap_error(e: clap::Error) -> CliError {
    let text = e.to_string();
    let line = text.lines().next().unwrap_or("invalid arguments");
    CliError::Usage(line.trim_start_matches("error: ").to_string())
}

/// Parses flags, reading the `--config` file if one is named.
pub fn parse_config<I, T>(args: I, env_out: Option<&str>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(clap_error)?;
    let file_text = match &cli.common.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        ),
        None => None,
    };
    resolve(cli, file_text.as_deref(), env_out)
}

/// [`parse_config`] with the config document supplied directly.
pub fn parse_config_with_file<I, T>(
    args: I,
    file_text: Option<&str>,
    env_out: Option<&str>,
) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(clap_error)?;
    resolve(cli, file_text, env_out)
}

fn resolve(cli: Cli, file_text: Option<&str>, env_out: Option<&str>) -> Result<RunConfig, CliError> {
    let file: FileConfig = match file_text {
        Some(t) => toml::from_str(t)
            .map_err(|e| CliError::Usage(format!("config file: {}", e.message().trim())))?,
        None => FileConfig::default(),
    };
    let c = cli.common;
    let output_path = c
        .out
        .or_else(|| env_out.filter(|s| !s.is_empty()).map(PathBuf::from))
        .or(file.output_path)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let mut flag_z = None;
    let command = match cli.command {
        CliCommand::Mlf { gamma, delta, z_re, z_im } => Command::Mlf {
            gamma,
            delta: delta.unwrap_or(1.0),
            z: Complex64::new(z_re, z_im.unwrap_or(0.0)),
        },
        CliCommand::Eig { family, modes, svg } => Command::Eig {
            family: family.or(file.family).unwrap_or(Family::Odd),
            modes: modes.or(file.modes).unwrap_or(3),
            svg,
        },
        CliCommand::Evolve { u0, z_list } => {
            flag_z = z_list;
            Command::Evolve { u0: u0.or(file.u0).unwrap_or_else(|| "mode:1".into()) }
        }
        CliCommand::Verify { quick, mutate_symbol } => Command::Verify {
            quick,
            symbol: if mutate_symbol { SymbolChoice::WrongPower } else { SymbolChoice::Correct },
        },
    };
    let cfg = RunConfig {
        command,
        beta: c.beta.or(file.beta).unwrap_or(1.8),
        alpha: c.alpha.or(file.alpha).unwrap_or(0.5),
        half_width: c.half_width.or(file.half_width).unwrap_or(1.0),
        wavenumber: c.k.or(file.k).unwrap_or(0.1),
        omega_beta: c.omega_beta.or(file.omega_beta).unwrap_or(0.0),
        n_grid: c.n_grid.or(file.n_grid).unwrap_or(4096),
        mode_cutoff: c.mode_cutoff.or(file.mode_cutoff).unwrap_or(64),
        z_list: flag_z.or(file.z_list).unwrap_or_else(|| DEFAULT_Z_LIST.to_vec()),
        output_path,
        seed: c.seed.or(file.seed).unwrap_or(0),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let usage = |m: String| Err(CliError::Usage(m));
    if !(cfg.beta > 1.0 && cfg.beta <= 2.0) {
        return usage(format!("beta must lie in (1, 2], got {}", cfg.beta));
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return usage(format!("alpha must lie in (0, 1), got {}", cfg.alpha));
    }
    FractionalOrders::new(cfg.alpha, cfg.beta)?;
    Grid1D::new(cfg.half_width, cfg.n_grid)?;
    if cfg.wavenumber == 0.0 || !cfg.wavenumber.is_finite() {
        return usage(format!("k must be finite and nonzero, got {}", cfg.wavenumber));
    }
    if !cfg.omega_beta.is_finite() {
        return usage("omega_beta must be finite".into());
    }
    if let Some(z) = cfg.z_list.iter().find(|z| !(**z >= 0.0 && z.is_finite())) {
        return usage(format!("z values must be finite and >= 0, got {z}"));
    }
    match &cfg.command {
        Command::Mlf { gamma, delta, z } => {
            if !(*gamma > 0.0) || !(*delta > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
                return usage("mlf needs gamma > 0, delta > 0 and a finite z".into());
            }
        }
        Command::Eig { modes, .. } => {
            if *modes == 0 || *modes >= cfg.n_grid / 2 {
                return usage(format!("modes must lie in [1, N/2), got {modes}"));
            }
        }
        Command::Evolve { .. } => {
            // only the series solver truncates, so only it can alias
            if cfg.mode_cutoff == 0 || cfg.mode_cutoff >= cfg.n_grid / 2 {
                return usage(format!(
                    "mode cutoff must lie in [1, N/2) = [1, {}), got {}",
                    cfg.n_grid / 2,
                    cfg.mode_cutoff
                ));
            }
        }
        Command::Verify { .. } => {}
    }
    Ok(())
}

impl RunConfig {
    pub fn verify_options(&self) -> VerifyOptions {
        match self.command {
            Command::Verify { quick, symbol } => VerifyOptions { seed: self.seed, quick, symbol },
            _ => VerifyOptions { seed: self.seed, ..VerifyOptions::default() },
        }
    }
}

/// Runs one invocation and returns its exit code. Help and version text go
/// to `out`; diagnostics go to `err`.
pub fn run<I, T>(args: I, env_out: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&args) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = write!(out, "{e}");
            return 0;
        }
    }
    let result = parse_config(&args, env_out).and_then(|cfg| dispatch(&cfg, out));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "levyslab: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.command {
        Command::Mlf { .. } => emit_mlf(cfg, out),
        Command::Eig { .. } => {
            let files = emit_eig(cfg)?;
            report_files(out, &files)
        }
        Command::Evolve { .. } => {
            let files = emit_evolve(cfg)?;
            report_files(out, &files)
        }
        Command::Verify { .. } => run_verify(cfg, out),
    }
}

fn report_files(out: &mut dyn Write, files: &[PathBuf]) -> Result<(), CliError> {
    for f in files {
        writeln!(out, "{}", f.display()).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}
