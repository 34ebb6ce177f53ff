//! `coex`: compute sensing-communication coexistence bounds, sweeps,
//! frontiers and Monte Carlo validations from a flat key=value config,
//! emitting deterministic CSV or JSON.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coex_core::bounds::Scheme;
use coex_core::montecarlo::FadingConfig;

use coex_cli::commands::{self, SchemeSelection};
use coex_cli::config::{self, RunConfig};
use coex_cli::{output, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Rs,
    Oma,
    Noma,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Rs => Scheme::Rs,
            SchemeArg::Oma => Scheme::Oma,
            SchemeArg::Noma => Scheme::Noma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepArg {
    Rs,
    Oma,
    Noma,
    All,
}

impl From<SweepArg> for SchemeSelection {
    fn from(s: SweepArg) -> SchemeSelection {
        match s {
            SweepArg::Rs => SchemeSelection::One(Scheme::Rs),
            SweepArg::Oma => SchemeSelection::One(Scheme::Oma),
            SweepArg::Noma => SchemeSelection::One(Scheme::Noma),
            SweepArg::All => SchemeSelection::All,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "coex",
    version,
    about = "Sensing-communication coexistence trade-off calculator",
    after_help = config::key_help()
)]
struct Cli {
    /// Path to a flat key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Monte Carlo seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo trial-count override.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Worker-thread cap for parallel sections (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Override every sweep grid size.
    #[arg(long, global = true)]
    grid_points: Option<usize>,

    /// Treat unknown config keys as errors instead of warnings.
    #[arg(long, global = true)]
    strict: bool,

    /// Report rates in Mbit/s instead of bit/s.
    #[arg(long, global = true)]
    mbps: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Closed-form operating points at canonical knobs for every scheme.
    Bounds,
    /// Inner-bound curves over the configured knob grids.
    Sweep {
        #[arg(long, value_enum, default_value_t = SweepArg::All)]
        scheme: SweepArg,
    },
    /// Sweep rows annotated with upper-convex-hull membership.
    Hull {
        #[arg(long, value_enum, default_value_t = SweepArg::All)]
        scheme: SweepArg,
        /// Pool every selected scheme's points into one combined hull.
        #[arg(long)]
        combined: bool,
    },
    /// Closed-form optimal power split plus its grid-search oracle.
    AlphaOpt,
    /// Ergodic rates under Rayleigh fading with standard errors.
    Montecarlo {
        #[arg(long, value_enum, default_value_t = SchemeArg::Rs)]
        scheme: SchemeArg,
        /// Knob values to evaluate (repeatable); scheme defaults if omitted.
        #[arg(long)]
        knob: Vec<f64>,
        /// Disable fading on the communication path.
        #[arg(long)]
        no_comm_fading: bool,
        /// Disable fading on the radar echo.
        #[arg(long)]
        no_radar_fading: bool,
    },
    /// Sampled-pulse Fisher information versus the closed-form CRLB.
    ValidateCrlb {
        /// Power split feeding the interference term; optimal when omitted.
        #[arg(long)]
        alpha: Option<f64>,
        /// Samples per Nyquist interval for the synthesized pulse.
        #[arg(long, default_value_t = 4)]
        oversample: usize,
        /// Use worst-case interference aligned with the pulse derivative.
        #[arg(long)]
        aligned: bool,
    },
    /// Optimal power split across communication ranges.
    AlphaVsRange,
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?,
        None => String::new(),
    };
    let (mut parsed, warnings) =
        config::parse_config(&text, cli.strict).map_err(|e| CliError::Config(e.to_string()))?;
    for warning in warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(seed) = cli.seed {
        parsed.mc.seed = seed;
    }
    if let Some(trials) = cli.trials {
        if trials == 0 {
            return Err(CliError::Config("`--trials` must be at least 1".into()));
        }
        parsed.mc.trials = trials;
    }
    Ok(parsed)
}

fn dispatch(cli: &Cli, config: &RunConfig) -> Result<output::Table, CliError> {
    match &cli.command {
        Cmd::Bounds => commands::bounds_table(config),
        Cmd::Sweep { scheme } => commands::sweep_table(config, (*scheme).into(), cli.grid_points),
        Cmd::Hull { scheme, combined } => {
            commands::hull_table(config, (*scheme).into(), *combined, cli.grid_points)
        }
        Cmd::AlphaOpt => commands::alpha_opt_table(config),
        Cmd::Montecarlo {
            scheme,
            knob,
            no_comm_fading,
            no_radar_fading,
        } => commands::montecarlo_table(
            config,
            (*scheme).into(),
            knob,
            config.mc.trials,
            config.mc.seed,
            FadingConfig {
                comm: !no_comm_fading,
                radar: !no_radar_fading,
            },
        ),
        Cmd::ValidateCrlb {
            alpha,
            oversample,
            aligned,
        } => commands::validate_crlb_table(config, *alpha, *oversample, *aligned),
        Cmd::AlphaVsRange => commands::alpha_vs_range_table(config),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let config = load_config(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
    let table = pool.install(|| dispatch(cli, &config))?;
    let table = if cli.mbps { table.to_megabit() } else { table };
    let rendered = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            CliError::Numeric(format!("cannot write output {}: {e}", path.display()))
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::Numeric(format!("cannot write stdout: {e}")))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
