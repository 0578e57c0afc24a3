use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod input;
mod report;

use commands::{algebra, fields, gaussian, oscillators};
use report::Report;

/// Noncommutative phase-space toolkit.
#[derive(Debug, Parser)]
#[command(name = "ncphase", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Star product and commutator of two symbols.
    Star(algebra::StarArgs),
    /// Moyal and Poisson brackets of two symbols.
    Bracket(algebra::StarArgs),
    /// Weyl-quantize a symbol on a truncated Fock space.
    Quantize(algebra::QuantizeArgs),
    /// Truncated q-deformed oscillator.
    Qosc(oscillators::QoscArgs),
    /// Witten index of the supersymmetric oscillator.
    Witten(oscillators::WittenArgs),
    /// Algebra-preservation check of a Bogoliubov transform.
    Bogoliubov(oscillators::BogoliubovArgs),
    /// Mode commutators under θ-deformed coordinates and momenta.
    ThetaModes(oscillators::ThetaModesArgs),
    /// Matrix-model Yang-Mills action of covariant coordinates.
    Ym(fields::YmArgs),
    /// Field strength of a symbol gauge potential.
    Swfield(fields::SwArgs),
    /// Landau levels of a charged particle in a constant field.
    Landau(fields::LandauArgs),
    /// Group-commutator phase of noncommuting exponentials.
    Braid(fields::BraidArgs),
    /// Gaussian partition function and correlators.
    Gaussian(gaussian::GaussianArgs),
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit status 2.
    Input(String),
    /// Well-formed request the mathematics rejects: exit status 1.
    Domain(String),
}

impl From<ncphase::Error> for CliError {
    fn from(e: ncphase::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

/// Seed for randomized sampling, from `NC_SEED`.
pub fn seed() -> Result<u64, CliError> {
    match std::env::var("NC_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("NC_SEED must be an unsigned integer, found `{s}`"))),
        Err(_) => Ok(20_240_917),
    }
}

fn run(command: Command) -> Result<(Report, report::OutputFormat), CliError> {
    match command {
        Command::Star(a) => algebra::star(a, false),
        Command::Bracket(a) => algebra::star(a, true),
        Command::Quantize(a) => algebra::quantize(a),
        Command::Qosc(a) => oscillators::qosc(a),
        Command::Witten(a) => oscillators::witten(a),
        Command::Bogoliubov(a) => oscillators::bogoliubov(a),
        Command::ThetaModes(a) => oscillators::theta_modes(a),
        Command::Ym(a) => fields::ym(a),
        Command::Swfield(a) => fields::swfield(a),
        Command::Landau(a) => fields::landau(a),
        Command::Braid(a) => fields::braid(a),
        Command::Gaussian(a) => gaussian::gaussian(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Domain(_) => 1,
            })
        }
    }
}
