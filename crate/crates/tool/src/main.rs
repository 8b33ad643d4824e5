use std::io::Write;
use std::process::ExitCode;

use chromvec::cli::{run, Cli};
use chromvec::Exit;
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Usage as u8),
            };
        }
    };
    let outcome = run(&cli);
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    if !outcome.output.is_empty() {
        let written = match &cli.global.out {
            Some(path) => std::fs::write(path, &outcome.output),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(outcome.output.as_bytes()).and_then(|()| {
                    if outcome.output.ends_with('\n') {
                        Ok(())
                    } else {
                        stdout.write_all(b"\n")
                    }
                })
            }
        };
        if let Err(e) = written {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(Exit::Usage as u8);
        }
    }
    ExitCode::from(outcome.exit as u8)
}
