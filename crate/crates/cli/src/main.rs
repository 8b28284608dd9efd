mod commands;
mod repro;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Entanglement detection with correlation-tensor criteria.
#[derive(Debug, Parser)]
#[command(name = "sepcrit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump the generalized Gell-Mann generators for dimension d.
    Basis {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        json: bool,
    },
    /// List catalog states or write one to a state file.
    Catalog(CatalogArgs),
    /// Emit the correlation tensor of a state file.
    Tensor {
        #[arg(long)]
        state: String,
        /// Use the augmented tensor instead of the correlation tensor.
        #[arg(long)]
        augmented: bool,
        /// Add per-mode unfolding singular values and Ky Fan norms.
        #[arg(long)]
        mode_dump: bool,
    },
    /// Run separability criteria on one state.
    Analyze(AnalyzeArgs),
    /// Find the detection threshold of a criterion along a state family.
    Scan(ScanArgs),
    /// Recompute the reference thresholds and print pass/fail per item.
    Repro {
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("catalog_action").required(true).args(["list", "emit"])))]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    #[arg(long, value_name = "NAME", requires = "out")]
    emit: Option<String>,
    #[arg(long)]
    param: Option<f64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true)))]
pub struct AnalyzeArgs {
    #[arg(long, group = "source", value_name = "NAME")]
    catalog: Option<String>,
    #[arg(long, requires = "catalog")]
    param: Option<f64>,
    #[arg(long, group = "source", value_name = "FILE")]
    state: Option<String>,
    /// Random separable state with the given comma-separated local dimensions.
    #[arg(long, group = "source", value_name = "DIMS", value_delimiter = ',')]
    random: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0, requires = "random")]
    seed: u64,
    #[arg(long, default_value_t = 4, requires = "random")]
    terms: usize,
    /// Comma-separated criterion names.
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    criteria: Option<Vec<String>>,
    /// Every closed-form criterion for the party structure (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, required_unless_present = "table")]
    family: Option<String>,
    #[arg(long, required_unless_present = "table")]
    criterion: Option<String>,
    /// Scan every family against every applicable criterion.
    #[arg(long, conflicts_with_all = ["family", "criterion"])]
    table: bool,
    #[arg(long, default_value_t = sepcrit::scan::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = sepcrit::scan::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
    /// Exit with status 3 when no crossing is found.
    #[arg(long)]
    expect_crossing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

const EXIT_VALIDATION: u8 = 2;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SEPCRIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SEPCRIT_THREADS must be a positive integer, got '{raw}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_VALIDATION);
    }
    let outcome = match cli.command {
        Command::Basis { d, json } => commands::basis(d, json),
        Command::Catalog(args) => commands::catalog(
            args.list,
            args.emit.as_deref(),
            args.param,
            args.out.as_deref(),
        ),
        Command::Tensor {
            state,
            augmented,
            mode_dump,
        } => commands::tensor(&state, augmented, mode_dump),
        Command::Analyze(args) => commands::analyze(&args),
        Command::Scan(args) => commands::scan(&args),
        Command::Repro { format } => repro::run(format),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let validation = e.downcast_ref::<sepcrit::Error>().is_some();
            ExitCode::from(if validation { EXIT_VALIDATION } else { 1 })
        }
    }
}
