use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use enrichfix_cli::{parse_config, run, Mode, EXIT_CONFIG};

#[derive(Parser)]
#[command(
    name = "enrichfix",
    version,
    about = "Fixed-point solver and verifier for map pairs on convex metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print nothing on success.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Run the alternating averaged iteration.
    Solve(RunArgs),
    /// Check contraction conditions and hypotheses.
    Verify(RunArgs),
    /// Run the well-posedness, shadowing and Ulam-Hyers probes.
    Stability(RunArgs),
    /// Estimate the smallest admissible contraction coefficient.
    Estimate(RunArgs),
    /// List builtin spaces and pairs.
    List,
}

fn execute(mode: Mode, args: RunArgs) -> ExitCode {
    let fail = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_CONFIG)
    };
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(format!("reading {}: {e}", args.config.display())),
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => return fail(format!("{}: {e}", e.category())),
    };
    if let Some(m) = cfg.mode {
        if m != mode {
            return fail(format!(
                "config mode is '{}' but the '{}' command was run",
                m.as_str(),
                mode.as_str()
            ));
        }
    }
    cfg.mode = Some(mode);
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = args.out {
        cfg.output = out;
    }
    match run(&cfg) {
        Ok(outcome) => {
            if !args.quiet || !outcome.passed {
                for line in &outcome.summary {
                    println!("{line}");
                }
                println!("report: {}", outcome.out_dir.join("report.json").display());
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.verb {
        Verb::Solve(a) => execute(Mode::Solve, a),
        Verb::Verify(a) => execute(Mode::Verify, a),
        Verb::Stability(a) => execute(Mode::Stability, a),
        Verb::Estimate(a) => execute(Mode::Estimate, a),
        Verb::List => {
            print!("{}", enrichfix_cli::list_registry());
            ExitCode::SUCCESS
        }
    }
}
