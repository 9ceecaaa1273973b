use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ptkg::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output_path = cli.output.clone();
    match cli::run(cli) {
        Ok(out) => {
            let write_result = match &output_path {
                Some(path) => std::fs::write(path, out.body.as_bytes()),
                None => std::io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(err) = write_result {
                eprintln!("failed to write output: {err}");
                return ExitCode::from(cli::EXIT_BAD_INPUT as u8);
            }
            if let Some(diag) = out.diagnostic {
                eprintln!("{diag}");
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code as u8)
        }
    }
}
