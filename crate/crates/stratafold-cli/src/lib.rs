//! Driver logic behind the `stratafold` binary. Parsing, dispatch, and
//! rendering live here so the pieces stay testable; `main` only forwards.
//!
//! Exit codes: 0 success, 2 unusable config or flags, 3 numerical contract
//! violation (positivity, trace, boundary), 4 invariant suite failure.

mod algebra;
pub mod config;
mod fisher;
mod lindblad;
pub mod pool;
pub mod report;
mod spectrum;

pub use config::{Cli, Command, Failure, Outcome, RunArgs};

pub fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Lindblad(args) => lindblad::run(args),
        Command::DecSpectrum(args) => spectrum::run(args),
        Command::AlgebraCheck(args) => algebra::run(args),
        Command::Fisher(args) => fisher::run(args),
    }
}

fn args_of(command: &Command) -> &RunArgs {
    match command {
        Command::Lindblad(args)
        | Command::DecSpectrum(args)
        | Command::AlgebraCheck(args)
        | Command::Fisher(args) => args,
    }
}

/// Runs the command, writes its output to the requested sink, and maps the
/// result to the exit code. Failure messages go to stderr.
pub fn execute(cli: &Cli) -> i32 {
    let args = args_of(&cli.command);
    match run(&cli.command) {
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
        Ok(outcome) => {
            let written = match &args.output {
                Some(path) => std::fs::write(path, &outcome.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    use std::io::Write;
                    match std::io::stdout().lock().write_all(outcome.text.as_bytes()) {
                        // reader hung up early (e.g. piped into head); not our problem
                        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                        other => other.map_err(|e| format!("cannot write to stdout: {e}")),
                    }
                }
            };
            match written {
                Err(message) => {
                    eprintln!("error: {message}");
                    2
                }
                Ok(()) if outcome.failed_invariants > 0 => {
                    eprintln!("error: {} invariant(s) failed", outcome.failed_invariants);
                    4
                }
                Ok(()) => 0,
            }
        }
    }
}
