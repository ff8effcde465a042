use std::process::ExitCode;

use clap::Parser;
use rainbow_forge_harness::cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(&cli) {
        Ok(report) => match &cli.out {
            Some(path) => match std::fs::write(path, &report.body) {
                Ok(()) => report.code,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                print!("{}", report.body);
                report.code
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
