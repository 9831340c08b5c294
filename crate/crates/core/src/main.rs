use std::path::PathBuf;
use std::process::ExitCode;

use btl::cli::{self, Command, DomainInput, Format, RunConfig, DEFAULT_LEVEL};
use clap::Parser;

/// Boundary δ-torsional rigidity: closed forms, finite elements and bounds.
#[derive(Debug, Parser)]
#[command(name = "btl", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// JSON file `{"kind": ..., "params": {...}}`.
    #[arg(long)]
    domain: PathBuf,

    #[arg(long, conflicts_with = "deltas")]
    delta: Option<f64>,

    /// Comma-separated list of δ values.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    deltas: Option<Vec<f64>>,

    /// Boundary segments of curved domains.
    #[arg(long)]
    segments: Option<usize>,

    /// Uniform refinement level (at most 8).
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    level: u32,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// With `solve --format csv`, print nodal values.
    #[arg(long)]
    nodal: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let domain = match DomainInput::load(&args.domain) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}: {e}", args.domain.display());
            return ExitCode::from(cli::EXIT_ERROR as u8);
        }
    };
    let mut config = RunConfig::new(args.command, domain);
    if let Some(d) = args.delta {
        config.deltas = vec![d];
    } else if let Some(ds) = args.deltas {
        config.deltas = ds;
    }
    config.segments = args.segments;
    config.level = args.level;
    config.format = args.format;
    config.out = args.out;
    config.nodal = args.nodal;

    let outcome = cli::run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
