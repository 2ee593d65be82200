use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use dixon::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.body) {
            Ok(()) => ExitCode::from(outcome.exit_code() as u8),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(cli: &Cli, body: &str) -> anyhow::Result<()> {
    match &cli.config.output {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .context("writing to stdout")?;
            out.flush().context("flushing stdout")
        }
    }
}
