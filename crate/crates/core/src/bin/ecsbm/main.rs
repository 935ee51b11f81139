mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use ecsbm::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Io { .. }
        | Error::UniverseMismatch { .. }
        | Error::VertexUniverseMismatch { .. }
        | Error::EmptyCluster(_)
        | Error::DuplicateAssignment(_) => EXIT_PARSE,
        _ => EXIT_INVARIANT,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match pool.install(|| commands::run(&cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
