mod args;
mod commands;
mod config;
mod error;
mod output;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Angle;
use config::ConfigFile;
use error::CliResult;

fn run(cli: &Cli) -> CliResult<()> {
    commands::check_jobs(cli.jobs)?;
    if let Some(n) = cli.jobs {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let angle = Angle { degrees: cli.degrees };
    let doc = match &cli.command {
        Command::Det(a) => commands::det(a, &cfg, angle)?,
        Command::Roots(a) => commands::roots(a, &cfg, angle)?,
        Command::Coeffs(a) => commands::coeffs(a, &cfg, angle)?,
        Command::Wavefunction(a) => commands::wavefunction(a, &cfg, angle)?,
        Command::Repro(r) => commands::repro(r, angle)?,
    };
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            doc.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            doc.write(cli.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nanoloop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
