//! Command layer behind the `qmediator` binary: config resolution, command
//! dispatch, output rendering and exit codes.

use crate::circuits::{
    build_symmetric, parse_p_grid, ConfigDocument, ExperimentConfig, Network, PSetting,
};
use crate::density::DensityMatrix;
use crate::error::Error;
use crate::experiment::{run_experiment, run_staged, sweep, SweepRow};
use crate::heisenberg::{render_table, run_network_frames, run_network_frames_symbolic, FrameDump};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

/// Grid used by `sweep` when neither `p_grid` nor `p` is given.
pub const DEFAULT_P_GRID: &str = "0:0.5:0.05";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("engine error: {0}")]
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Engine(_) => EXIT_ENGINE,
        }
    }
}

/// Errors raised while running are split by cause: bad user input maps to a
/// config error, everything else to an engine error.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::OutOfRange { .. }
            | Error::InvalidAxis(_)
            | Error::PopulationExceeded { .. }
            | Error::ExhaustiveCap { .. }
            | Error::OddStages(_)
            | Error::Invalid(_) => CliError::Config(e.to_string()),
            other => CliError::Engine(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Table,
    Sweep,
    Staged,
    Run,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(CliError::Config(format!(
                "unknown format '{s}' (csv, json, text)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub config_path: Option<PathBuf>,
    /// Values given on the command line; these win over the config file.
    pub overrides: ConfigDocument,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub dump_state: Option<PathBuf>,
    pub timing: bool,
}

impl Invocation {
    pub fn new(command: Command) -> Self {
        Invocation {
            command,
            config_path: None,
            overrides: ConfigDocument::default(),
            format: None,
            out: None,
            dump_state: None,
            timing: false,
        }
    }
}

pub struct Output {
    pub text: String,
    pub state: Option<DensityMatrix>,
}

/// Merges the config file (if any) with command-line overrides. The staged
/// command implies the staged network unless a network is named explicitly.
pub fn resolve_config(
    command: Command,
    path: Option<&Path>,
    overrides: &ConfigDocument,
) -> Result<ExperimentConfig, CliError> {
    let base = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            ConfigDocument::from_toml(&text).map_err(|e| CliError::Config(e.to_string()))?
        }
        None => ConfigDocument::default(),
    };
    let mut doc = base.merged(overrides.clone());
    if command == Command::Staged {
        match doc.network.as_deref() {
            None => doc.network = Some(Network::Staged.to_string()),
            Some(n) if n != "staged" => {
                return Err(CliError::Config(format!(
                    "staged runs the staged network, not '{n}'"
                )))
            }
            _ => {}
        }
    }
    ExperimentConfig::from_document(&doc).map_err(|e| CliError::Config(e.to_string()))
}

/// Runs the command and returns what would be written, without touching the
/// filesystem.
pub fn render(inv: &Invocation) -> Result<Output, CliError> {
    let cfg = resolve_config(inv.command, inv.config_path.as_deref(), &inv.overrides)?;
    if inv.dump_state.is_some() && !matches!(inv.command, Command::Run | Command::Staged) {
        return Err(CliError::Config(
            "--dump-state applies to run and staged only".into(),
        ));
    }
    match inv.command {
        Command::Table => match inv.format.unwrap_or(Format::Text) {
            Format::Csv => Err(CliError::Config("table supports text and json".into())),
            f => cmd_table(&cfg, f == Format::Json).map(text_only),
        },
        Command::Sweep => match inv.format.unwrap_or(Format::Csv) {
            Format::Text => Err(CliError::Config("sweep supports csv and json".into())),
            f => cmd_sweep(&cfg, f == Format::Json).map(text_only),
        },
        Command::Staged => {
            json_only(inv.format, "staged")?;
            let start = Instant::now();
            let mut report = run_staged(&cfg)?;
            if inv.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let state = report.variants.last().map(|v| v.state.clone());
            Ok(Output {
                text: to_json(&report)?,
                state,
            })
        }
        Command::Run => {
            json_only(inv.format, "run")?;
            let start = Instant::now();
            let (mut report, state) = run_experiment(&cfg)?;
            if inv.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            Ok(Output {
                text: to_json(&report)?,
                state: Some(state),
            })
        }
    }
}

/// Runs the command and writes its output to `--out` (or returns it for
/// stdout) and the final state to `--dump-state`.
pub fn execute(inv: &Invocation) -> Result<Option<String>, CliError> {
    let out = render(inv)?;
    if let (Some(path), Some(state)) = (&inv.dump_state, &out.state) {
        write_file(path, &state.to_le_bytes())?;
    }
    match &inv.out {
        Some(path) => {
            write_file(path, out.text.as_bytes())?;
            Ok(None)
        }
        None => Ok(Some(out.text)),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn text_only(text: String) -> Output {
    Output { text, state: None }
}

fn json_only(format: Option<Format>, cmd: &str) -> Result<(), CliError> {
    match format {
        None | Some(Format::Json) => Ok(()),
        Some(_) => Err(CliError::Config(format!("{cmd} supports json only"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Engine(Error::Invalid(e.to_string())))?;
    s.push('\n');
    Ok(s)
}

/// Descriptor table of the chosen network.
pub fn cmd_table(cfg: &ExperimentConfig, json: bool) -> Result<String, CliError> {
    match cfg.network {
        Network::Symmetric => {
            if cfg.p == PSetting::Symbolic {
                let frames = run_network_frames_symbolic(&build_symmetric(Some(0.0))?)?;
                return if json {
                    to_json(&frames.iter().map(FrameDump::from_frame).collect::<Vec<_>>())
                } else {
                    Ok(render_table(&frames))
                };
            }
            let frames = run_network_frames(&build_symmetric(cfg.p.value())?)?;
            table_output(&frames, json)
        }
        Network::Asymmetric => {
            if cfg.p != PSetting::Absent {
                return Err(CliError::Config(
                    "the asymmetric network has no dephasing site".into(),
                ));
            }
            let frames = run_network_frames(&crate::circuits::build_asymmetric()?)?;
            table_output(&frames, json)
        }
        Network::Staged => {
            let circuit = crate::circuits::build_staged(cfg.stages, None, cfg.staged)?;
            let frames = run_network_frames(&circuit)?;
            table_output(&frames, json)
        }
    }
}

fn table_output(
    frames: &[crate::heisenberg::DescriptorFrame],
    json: bool,
) -> Result<String, CliError> {
    if json {
        to_json(&frames.iter().map(FrameDump::from_frame).collect::<Vec<_>>())
    } else {
        Ok(render_table(frames))
    }
}

pub const SWEEP_HEADER: &str =
    "p,witness_heisenberg,witness_density,negativity_AD,nonclassicality_B,nonclassicality_C";

/// Dephasing sweep as CSV (or a JSON array of rows).
pub fn cmd_sweep(cfg: &ExperimentConfig, json: bool) -> Result<String, CliError> {
    let grid = match (&cfg.p_grid, cfg.p) {
        (Some(g), _) => g.clone(),
        (None, PSetting::Value(p)) => vec![p],
        (None, _) => parse_p_grid(DEFAULT_P_GRID)?,
    };
    let rows = sweep(cfg, &grid)?;
    if json {
        return to_json(&rows);
    }
    Ok(sweep_csv(&rows))
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    let cell = |v: Option<f64>| v.map(format_g17).unwrap_or_default();
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_g17(r.p),
            cell(r.witness_heisenberg),
            format_g17(r.witness_density),
            format_g17(r.negativity_ad),
            cell(r.nonclassicality_b),
            cell(r.nonclassicality_c),
        );
    }
    out
}

/// `printf("%.17g")` formatting, independent of locale.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
