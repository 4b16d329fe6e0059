use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use covwave::{CliError, Command, Overrides};

#[derive(Parser)]
#[command(
    name = "covwave",
    version,
    about = "Boost-covariant wave packets, windows and entropy sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Wavelet synthesis G(u), edge leakage, optional photon bridge
    Synthesize(RunArgs),
    /// Boosted spectra, mean momentum and multiplier pair
    Boost(RunArgs),
    /// Windowed spectra and the ratio w/p
    Window(RunArgs),
    /// Photon amplitude, invariant norm and photon field
    Photon(RunArgs),
    /// Entropy difference of analytic and windowed densities
    Entropy(RunArgs),
    /// Everything above over the rapidity list
    Sweep(RunArgs),
    /// Validate the config and list every violation
    Check(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Comma-separated rapidities
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    eta: Option<String>,
    /// Window as kind,a,w
    #[arg(long, value_name = "KIND,A,W", allow_hyphen_values = true)]
    window: Option<String>,
    /// Node count for both the k-grid and the u-grid
    #[arg(long, value_name = "N")]
    grid_n: Option<usize>,
    /// Report path
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "intensity|photon")]
    density_mode: Option<String>,
    #[arg(long)]
    emit_signals: bool,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            eta: self.eta.clone(),
            window: self.window.clone(),
            grid_n: self.grid_n,
            out: self
                .out
                .as_ref()
                .map(|p| std::path::absolute(p).unwrap_or_else(|_| p.clone())),
            density_mode: self.density_mode.clone(),
            emit_signals: self.emit_signals,
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.machine_line());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            return fail(&CliError::Usage(
                first.trim_start_matches("error: ").to_string(),
            ));
        }
    };
    let (command, args) = match &cli.command {
        Sub::Synthesize(a) => (Command::Synthesize, a),
        Sub::Boost(a) => (Command::Boost, a),
        Sub::Window(a) => (Command::Window, a),
        Sub::Photon(a) => (Command::Photon, a),
        Sub::Entropy(a) => (Command::Entropy, a),
        Sub::Sweep(a) => (Command::Sweep, a),
        Sub::Check(a) => (Command::Check, a),
    };
    let overrides = args.overrides();

    if command == Command::Check {
        let violations = covwave::check(&args.config, &overrides);
        if violations.is_empty() {
            println!("ok");
            return ExitCode::SUCCESS;
        }
        for v in &violations {
            println!("violation {v}");
        }
        return fail(&CliError::Config(violations));
    }

    match covwave::execute(&args.config, &overrides, command) {
        Ok(report) => {
            if let Some(text) = report {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
