// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use reliance::cli::{run_with_threads, RunConfig};

fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var("RELIANCE_THREADS") {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("RELIANCE_THREADS must be a positive integer, got `{v}`")),
        },
        _ => Ok(None),
    }
}

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(1);
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: usage: {msg}");
            return ExitCode::from(1);
        }
    };

    match run_with_threads(&config, threads) {
        Ok(output) => {
            for line in &output.diagnostics {
                eprintln!("{line}");
            }
            let written = match &config.output_path {
                Some(path) => std::fs::write(path, output.data.as_bytes()),
                None => std::io::stdout().lock().write_all(output.data.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: io: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
