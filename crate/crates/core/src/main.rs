use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use k2lambda::cli::{self, Format, Overrides, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "k2lambda", version, about = "Exact checks for tensorlike functors, K2L decompositions and relative K2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits non-zero iff a check fails.
    Verify(RunArgs),
    /// Compute TC, FP, decompositions and squares for each (params, ring) case.
    Report(RunArgs),
    /// Print the Smith normal form of a JSON or CSV integer matrix.
    Snf {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Restrict to the named suites (repeatable).
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    #[arg(long)]
    max_ring_size: Option<u64>,
}

fn load(args: &RunArgs) -> Result<RunConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            RunConfig::from_toml(&src).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    cfg.apply(&Overrides {
        format: args.format,
        seed: args.seed,
        suites: args.suites.clone(),
        max_ring_size: args.max_ring_size,
    });
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify(args) => {
            let cfg = load(&args)?;
            let rep = cli::verify(&cfg);
            match cfg.format {
                Format::Json => print!("{}", cli::to_json(&rep)),
                Format::Text => print!("{}", cli::render_verify_text(&rep)),
            }
            Ok(rep.failed == 0)
        }
        Command::Report(args) => {
            let cfg = load(&args)?;
            let rep = cli::build_report(&cfg);
            match cfg.format {
                Format::Json => print!("{}", cli::to_json(&rep)),
                Format::Text => print!("{}", cli::render_report_text(&rep)),
            }
            Ok(rep.errors() == 0)
        }
        Command::Snf { file, format } => {
            let src = std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let m = cli::parse_matrix(&src).map_err(|e| format!("{}: {e}", file.display()))?;
            if let Some(r) = cli::snf_result(&m) {
                match format.unwrap_or_default() {
                    Format::Json => print!("{}", cli::to_json(&r)),
                    Format::Text => print!("{}", cli::render_snf_text(&r)),
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
