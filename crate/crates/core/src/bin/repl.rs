use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use typed_logic::repl::{
    run_interactive, run_script, ExitStatus, Options, PredicateRegistry, SCRIPT_MAX_STEPS,
};

/// Query loop over the standard predicates.
#[derive(Parser)]
#[command(name = "repl", version)]
struct Args {
    /// Run the queries in FILE instead of reading from the terminal.
    #[arg(long, value_name = "FILE")]
    script: Option<PathBuf>,
    /// Step budget per query [default: 1000000 for scripts, unlimited otherwise].
    #[arg(long, value_name = "N")]
    max_steps: Option<u64>,
    /// Don't print the banner.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let registry = PredicateRegistry::standard();
    let mut out = io::stdout().lock();
    let result = match &args.script {
        Some(path) => std::fs::read_to_string(path).and_then(|source| {
            let options = Options {
                max_steps: Some(args.max_steps.unwrap_or(SCRIPT_MAX_STEPS)),
                quiet: args.quiet,
            };
            run_script(&source, &registry, &options, &mut out)
        }),
        None => {
            let options = Options {
                max_steps: args.max_steps,
                quiet: args.quiet,
            };
            run_interactive(&registry, &options, &mut io::stdin().lock(), &mut out)
        }
    };
    let status = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitStatus::Io
    });
    ExitCode::from(status.code() as u8)
}
