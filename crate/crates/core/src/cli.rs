//! Command-line surface: `run`, `sweep` and `state`.
//!
//! Exit status is 0 on success, 2 for invalid flags or parameter values, and
//! 1 when output cannot be written. An optional `--config` file of
//! `key = value` lines supplies defaults; flags on the command line win.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::schmidt_alice_bob;
use crate::protocol::{self, uniform_grid, ProtocolKind, ProtocolResult, SweepSpec};
use crate::source::{k_plus_state, SourceParams};

pub const CSV_HEADER: [&str; 5] = ["s", "f_in", "p_success", "f_upper", "f_lower"];

#[derive(Debug, Parser)]
#[command(
    name = "pdc-purify",
    version,
    about = "Polarization purification with spatially entangled PDC pairs"
)]
pub struct Cli {
    /// File of `key = value` lines providing defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one protocol instance and print the result as JSON.
    Run(RunArgs),
    /// Sweep the channel parameter s and emit curve data.
    Sweep(SweepArgs),
    /// Print a source state with its Schmidt decomposition.
    State(StateArgs),
}

#[derive(Debug, Args, Default)]
pub struct PhaseArgs {
    /// Relative amplitude of the lower-mode pair, in [0, 1].
    #[arg(long)]
    pub r: Option<f64>,
    /// Phase of the lower-mode pair in radians, in [0, 2π).
    #[arg(long, conflicts_with = "cos_phi")]
    pub phi: Option<f64>,
    /// Gives φ = arccos(cos-phi) instead of --phi.
    #[arg(long, allow_negative_numbers = true)]
    pub cos_phi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolKind>,
    #[command(flatten)]
    pub phase: PhaseArgs,
    /// Survival probability of the depolarizing channels, in [0, 1].
    #[arg(long)]
    pub s: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolKind>,
    #[command(flatten)]
    pub phase: PhaseArgs,
    #[arg(long)]
    pub s_min: Option<f64>,
    #[arg(long)]
    pub s_max: Option<f64>,
    /// Number of grid points, at least 2.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub phase: PhaseArgs,
    /// Number of photon pairs, 1 or 2.
    #[arg(long)]
    pub pairs: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

const CONFIG_KEYS: &[&str] = &[
    "protocol", "r", "phi", "cos-phi", "s", "s-min", "s-max", "steps", "out", "format", "pairs",
];

/// Defaults read from a `key = value` file. Blank lines and `#` comments are
/// skipped; `_` and `-` are interchangeable in keys.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Config(BTreeMap<String, String>);

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected `key = value`", n + 1))
            })?;
            let key = key.trim().replace('_', "-");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{key}`",
                    n + 1
                )));
            }
            map.insert(key, value.trim().to_string());
        }
        Ok(Config(map))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn value<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.0
            .get(key)
            .map(|v| {
                v.parse().map_err(|_| {
                    CliError::Usage(format!("config: invalid value `{v}` for `{key}`"))
                })
            })
            .transpose()
    }

    fn value_enum<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.0
            .get(key)
            .map(|v| {
                T::from_str(v, true).map_err(|_| {
                    CliError::Usage(format!("config: invalid value `{v}` for `{key}`"))
                })
            })
            .transpose()
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.value(key),
        }
    }

    fn or_enum<T: ValueEnum>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.value_enum(key),
        }
    }
}

fn phi_from_cos(cos_phi: f64) -> Result<f64, CliError> {
    if cos_phi.is_finite() && (-1.0..=1.0).contains(&cos_phi) {
        Ok(cos_phi.acos())
    } else {
        Err(CliError::Usage(format!(
            "cos-phi = {cos_phi} outside [-1, 1]"
        )))
    }
}

/// Resolves `(r, φ)`. A phase given on the command line in either form
/// overrides any phase in the config.
fn resolve_phase(args: &PhaseArgs, cfg: &Config) -> Result<(f64, f64), CliError> {
    let r = cfg.or(args.r, "r")?.unwrap_or(1.0);
    let phi = match (args.phi, args.cos_phi) {
        (Some(phi), _) => phi,
        (None, Some(c)) => phi_from_cos(c)?,
        (None, None) => match (cfg.value::<f64>("phi")?, cfg.value::<f64>("cos-phi")?) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "config sets both `phi` and `cos-phi`".into(),
                ))
            }
            (Some(phi), None) => phi,
            (None, Some(c)) => phi_from_cos(c)?,
            (None, None) => 0.0,
        },
    };
    Ok((r, phi))
}

/// Decimal rendering with 15 significant digits.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (14 - magnitude).clamp(0, 60) as usize;
    format!("{x:.decimals$}")
}

fn optional(x: Option<f64>) -> String {
    x.map(format_decimal).unwrap_or_default()
}

pub fn write_csv<W: Write>(out: W, results: &[ProtocolResult]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in results {
        w.write_record([
            format_decimal(r.s),
            format_decimal(r.f_in),
            format_decimal(r.p_success),
            optional(r.f_upper),
            optional(r.f_lower),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn cmd_run(args: &RunArgs, cfg: &Config, stdout: &mut dyn Write) -> Result<(), CliError> {
    let protocol = cfg
        .or_enum(args.protocol, "protocol")?
        .unwrap_or(ProtocolKind::FourPhoton);
    let (r, phi) = resolve_phase(&args.phase, cfg)?;
    let s = cfg.or(args.s, "s")?.unwrap_or(1.0);
    let result = protocol::run(protocol, r, phi, s)?;
    stdout
        .write_all(to_json(&result).as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))
}

fn cmd_sweep(args: &SweepArgs, cfg: &Config, stdout: &mut dyn Write) -> Result<(), CliError> {
    let protocol = cfg
        .or_enum(args.protocol, "protocol")?
        .unwrap_or(ProtocolKind::FourPhoton);
    let (r, phi) = resolve_phase(&args.phase, cfg)?;
    let s_min = cfg.or(args.s_min, "s-min")?.unwrap_or(0.0);
    let s_max = cfg.or(args.s_max, "s-max")?.unwrap_or(1.0);
    let steps = cfg.or(args.steps, "steps")?.unwrap_or(21);
    let format = cfg.or_enum(args.format, "format")?.unwrap_or(Format::Csv);
    let out: Option<PathBuf> = cfg.or(args.out.clone(), "out")?;

    let spec = SweepSpec::new(protocol, r, phi, uniform_grid(s_min, s_max, steps)?)?;
    let results = protocol::sweep(&spec)?;

    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(&mut buf, &results)?,
        Format::Json => buf.extend_from_slice(to_json(&results).as_bytes()),
    }
    match out {
        Some(path) => fs::write(&path, &buf)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(&buf)
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

#[derive(Serialize)]
struct StateParams {
    r: f64,
    phi: f64,
    pairs: u32,
}

#[derive(Serialize)]
struct Term {
    ket: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct StateReport {
    params: StateParams,
    photons: u32,
    terms: Vec<Term>,
    schmidt_coefficients: Vec<f64>,
    entropy_ebits: f64,
}

fn cmd_state(args: &StateArgs, cfg: &Config, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (r, phi) = resolve_phase(&args.phase, cfg)?;
    let pairs = cfg.or(args.pairs, "pairs")?.unwrap_or(1);
    let psi = k_plus_state(&SourceParams::spatially_entangled(r, phi, pairs)?)?;
    let schmidt = schmidt_alice_bob(&psi)?;
    let report = StateReport {
        params: StateParams { r, phi, pairs },
        photons: psi.photons(),
        terms: psi
            .iter()
            .map(|(k, a)| Term {
                ket: k.to_string(),
                re: a.re,
                im: a.im,
            })
            .collect(),
        schmidt_coefficients: schmidt.coefficients,
        entropy_ebits: schmidt.entropy_ebits,
    };
    stdout
        .write_all(to_json(&report).as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Run(a) => cmd_run(a, &cfg, stdout),
        Command::Sweep(a) => cmd_sweep(a, &cfg, stdout),
        Command::State(a) => cmd_state(a, &cfg, stdout),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
