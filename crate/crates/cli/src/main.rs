//! `cbeta`: command-line front end for the expansion, samplers and
//! experiment harness.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cbeta", version, about = "Circular and sine beta-ensemble numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Jack-series expectation, its limit and bounds from a TOML config.
    Expand { config: PathBuf },
    /// Draw circular beta-ensemble samples.
    SampleCbe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
        format: SampleFormat,
    },
    /// Simulate sine-beta configurations on a window.
    SimulateSine {
        #[arg(long)]
        beta: f64,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Vec<f64>,
        #[arg(long, default_value_t = 401)]
        grid_points: usize,
        #[arg(long)]
        paths: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Diagnostics sidecar; defaults to the output path with a `.json` extension.
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Run the sine-beta CLT sweep from a TOML config.
    CltTest { config: PathBuf },
    /// Compare CBE and sine-beta exponential moments from a TOML config.
    Verify { config: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleFormat {
    /// One row per sample: index, then the sorted angles.
    Csv,
    /// One JSON object per line.
    Jsonl,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Expand { config } => commands::expand(&config),
        Command::SampleCbe {
            n,
            beta,
            samples,
            seed,
            out,
            format,
        } => commands::sample_cbe(n, beta, samples, seed, &out, format),
        Command::SimulateSine {
            beta,
            window,
            grid_points,
            paths,
            seed,
            out,
            diagnostics,
        } => {
            let sidecar = diagnostics.unwrap_or_else(|| out.with_extension("json"));
            commands::simulate_sine(beta, (window[0], window[1]), grid_points, paths, seed, &out, &sidecar)
        }
        Command::CltTest { config } => commands::clt_test(&config),
        Command::Verify { config } => commands::verify(&config),
    };
    match outcome {
        Ok(gates) if gates.passed() => ExitCode::SUCCESS,
        Ok(gates) => {
            for failure in gates.failures() {
                eprintln!("gate failed: {failure}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
