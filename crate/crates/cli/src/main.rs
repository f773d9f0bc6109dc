use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use relpres_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let text = outcome.render();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            // a closed pipe on stdout is not an error of the run
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    ExitCode::from(outcome.code as u8)
}
