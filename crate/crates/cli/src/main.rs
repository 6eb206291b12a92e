//! `simplex-limits`: reproducible tables and Monte Carlo runs on top of the
//! `simplex-limits` library.
//!
//! Exit codes: 1 invalid input, 2 numerical failure, 3 I/O.

mod args;
mod commands;
mod error;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;
use sha2::{Digest, Sha256};

use args::Cli;
use commands::Output;
use error::CliError;

fn write_output(output: &Output, w: impl Write) -> Result<(), CliError> {
    match output {
        Output::Csv { header, rows } => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(header)?;
            for row in rows {
                csv.write_record(row)?;
            }
            csv.flush()?;
        }
        Output::Json(value) => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn write_meta(cli: &Cli, path: &Path, wall_time: f64) -> Result<(), CliError> {
    let config = serde_json::to_value(cli)?;
    let hash = hex::encode(Sha256::digest(serde_json::to_vec(&config)?));
    let meta = json!({
        "command": cli.command.name(),
        "config": config,
        "config_hash": hash,
        "output": path.file_name().map(|f| f.to_string_lossy()),
        "versions": {
            "simplex-limits-cli": env!("CARGO_PKG_VERSION"),
            "simplex-limits": simplex_limits::VERSION,
        },
        "wall_time_secs": wall_time,
    });
    let file = File::create(sidecar(path))?;
    write_output(&Output::Json(meta), BufWriter::new(file))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let output = simplex_limits::rng::with_threads(cli.threads, || commands::run(&cli.command))??;
    match &cli.output {
        Some(path) => {
            write_output(&output, BufWriter::new(File::create(path)?))?;
            write_meta(cli, path, start.elapsed().as_secs_f64())
        }
        None => write_output(&output, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simplex-limits: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
