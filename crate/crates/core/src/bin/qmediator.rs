use clap::{Args, Parser, Subcommand};
use qmediator::circuits::{ConfigDocument, PValue};
use qmediator::cli::{execute, Command, Format, Invocation, EXIT_OK};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qmediator",
    version,
    about = "Descriptor-frame and density-matrix simulation of mediated entanglement"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the descriptor table of a network.
    Table(Opts),
    /// Sweep the dephasing strength and emit witness/negativity rows.
    Sweep(Opts),
    /// Run the staged transfer with and without temporal averaging.
    Staged(Opts),
    /// Run a single experiment and emit a full report.
    Run(Opts),
}

#[derive(Args)]
struct Opts {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// symmetric | asymmetric | staged
    #[arg(long)]
    network: Option<String>,
    /// Dephasing strength in [0,1], or "symbolic".
    #[arg(long)]
    p: Option<String>,
    /// "start:stop:step" or a comma list.
    #[arg(long)]
    p_grid: Option<String>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Initial basis state, qubit A first, e.g. 1100.
    #[arg(long)]
    initial_bits: Option<String>,
    #[arg(long)]
    stages: Option<usize>,
    /// none | sampled:N | exhaustive
    #[arg(long)]
    patterns: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// xz-zx | xx-zz
    #[arg(long)]
    axes: Option<String>,
    /// sequential | interleaved
    #[arg(long)]
    ordering: Option<String>,
    /// z-after-u | z-before-u
    #[arg(long)]
    v_order: Option<String>,
    /// Detection threshold on in-phase and antiphase amplitudes.
    #[arg(long)]
    threshold: Option<f64>,
    /// csv | json | text
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the final density matrix as little-endian f64 (re, im) pairs.
    #[arg(long)]
    dump_state: Option<PathBuf>,
    /// Include wall-clock timing in JSON reports.
    #[arg(long)]
    timing: bool,
}

fn invocation(command: Command, o: Opts) -> Result<Invocation, qmediator::cli::CliError> {
    let p = o.p.map(|s| match s.parse::<f64>() {
        Ok(v) => PValue::Number(v),
        Err(_) => PValue::Text(s),
    });
    Ok(Invocation {
        command,
        config_path: o.config,
        overrides: ConfigDocument {
            network: o.network,
            p,
            p_grid: o.p_grid,
            epsilon: o.epsilon,
            initial_bits: o.initial_bits,
            stages: o.stages,
            patterns: o.patterns,
            seed: o.seed,
            axes: o.axes,
            ordering: o.ordering,
            v_order: o.v_order,
            threshold: o.threshold,
        },
        format: o.format.map(|f| f.parse::<Format>()).transpose()?,
        out: o.out,
        dump_state: o.dump_state,
        timing: o.timing,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { EXIT_OK as u8 });
        }
    };
    let (command, opts) = match cli.command {
        Cmd::Table(o) => (Command::Table, o),
        Cmd::Sweep(o) => (Command::Sweep, o),
        Cmd::Staged(o) => (Command::Staged, o),
        Cmd::Run(o) => (Command::Run, o),
    };
    match invocation(command, opts).and_then(|inv| execute(&inv)) {
        Ok(Some(text)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmediator: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
