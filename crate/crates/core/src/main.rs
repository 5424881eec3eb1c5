use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use posmon::cli::{run, Cli};

fn main() -> ExitCode {
    // usage errors exit 1; exit 2 is reserved for undecided verdicts
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            let mut shown = out.rendered(cli.json).to_string();
            if !shown.ends_with('\n') {
                shown.push('\n');
            }
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(shown.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
