use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use structexp::{Method, DEFAULT_TOL};
use structexp_cli::commands::{self, CliError, VerifyOptions};
use structexp_cli::load;

#[derive(Parser)]
#[command(name = "structexp", version)]
#[command(about = "Classify, exponentiate and verify structured 2x2, 3x3 and 4x4 matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Matrix file (plaintext or JSON), or `-` for stdin
    #[arg(allow_hyphen_values = true)]
    file: String,

    /// Read FILE as the matrix text itself
    #[arg(long)]
    inline: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List every structure class the matrix belongs to, with its parameters
    Classify {
        #[command(flatten)]
        input: Input,
        /// Membership tolerance, relative to the Frobenius norm
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Print e^A and the route used to compute it
    Expm {
        #[command(flatten)]
        input: Input,
        /// auto, oracle, covering:<algebra>, or a class name such as perskew or lie3
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Print the result as a JSON matrix document
        #[arg(long)]
        json: bool,
    },
    /// Compare closed-form routes against the series oracle; exit 1 if any residual exceeds 1e-10
    Verify {
        #[command(flatten)]
        input: Input,
        /// Check every applicable route, not just the one `expm` would pick
        #[arg(long)]
        all_routes: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Corrupt each closed-form result before comparing (testing aid)
        #[cfg(feature = "fault-injection")]
        #[arg(long)]
        inject_fault: bool,
    },
    /// Print the 16 quaternion tensor coefficients of a 4x4 matrix
    Rep {
        #[command(flatten)]
        input: Input,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Classify { input, tol } => {
            let m = load(&input.file, input.inline)?;
            Ok((commands::classify(&m, tol)?, true))
        }
        Command::Expm { input, method, tol, json } => {
            let m = load(&input.file, input.inline)?;
            Ok((commands::expm_command(&m, &method, tol, json)?, true))
        }
        Command::Verify {
            input,
            all_routes,
            tol,
            #[cfg(feature = "fault-injection")]
            inject_fault,
        } => {
            let m = load(&input.file, input.inline)?;
            let opts = VerifyOptions {
                all_routes,
                #[cfg(feature = "fault-injection")]
                inject_fault,
            };
            commands::verify(&m, tol, opts)
        }
        Command::Rep { input } => {
            let m = load(&input.file, input.inline)?;
            Ok((commands::rep(&m)?, true))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
