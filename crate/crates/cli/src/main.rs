use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gupent_cli::figures::{self, FigureId};
use gupent_cli::sweep::{self, Quantity, SweepRequest};
use gupent_cli::verify::{self, Fault, Options};
use gupent_cli::{report, CliError};

/// Entanglement of GUP-coupled harmonic oscillators, to first order in α.
#[derive(Parser)]
#[command(name = "gupent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite against the numerical oracles
    Verify {
        /// Only the checks that finish in a few seconds
        #[arg(long)]
        fast: bool,
        /// Corrupt a closed form to confirm the suite catches it
        #[arg(long, value_name = "FAULT")]
        inject_fault: Option<Fault>,
    },
    /// Write the data behind a figure as CSV
    Figure {
        /// 1, 2, 3a or 3b
        id: FigureId,
        #[arg(long)]
        out: PathBuf,
        /// Overwrite an existing file
        #[arg(long)]
        force: bool,
    },
    /// Rényi entropy or entanglement of formation at a single point
    Entropy {
        #[arg(long)]
        gamma: f64,
        #[arg(long = "j")]
        coupling: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        k0: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Evaluate a quantity over a J x alpha grid
    Sweep {
        /// purity, renyi, eof, trace-power or energy
        #[arg(long)]
        quantity: Quantity,
        /// Order of the Rényi entropy
        #[arg(long)]
        gamma: Option<f64>,
        /// Power of the trace
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        j_values: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha_values: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        k0: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify { fast, inject_fault } => {
            let outcomes = verify::run(Options {
                fast,
                fault: inject_fault,
            });
            for o in &outcomes {
                println!("{}", o.line());
            }
            let failed: Vec<&str> = outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| o.name)
                .collect();
            if failed.is_empty() {
                println!("all {} checks passed", outcomes.len());
                Ok(true)
            } else {
                println!("failed: {}", failed.join(", "));
                Ok(false)
            }
        }
        Command::Figure { id, out, force } => {
            let fig = figures::build(id)?;
            for w in &fig.warnings {
                eprintln!("{w}");
            }
            fig.table.write(&out, force)?;
            println!("wrote figure {} to {}", id.label(), out.display());
            Ok(true)
        }
        Command::Entropy {
            gamma,
            coupling,
            alpha,
            k0,
            m,
            hbar,
        } => {
            let r = report::entropy(gamma, coupling, alpha, k0, m, hbar)?;
            for n in &r.notices {
                eprintln!("{n}");
            }
            print!("{}", r.render());
            Ok(true)
        }
        Command::Sweep {
            quantity,
            gamma,
            n,
            j_values,
            alpha_values,
            k0,
            m,
            hbar,
            out,
            force,
        } => {
            let req = SweepRequest {
                quantity,
                gamma,
                n,
                j_values,
                alpha_values,
                k0,
                m,
                hbar,
            };
            let result = sweep::run(req)?;
            for n in &result.notices {
                eprintln!("{n}");
            }
            result.table.write(&out, force)?;
            println!(
                "wrote {} rows to {}",
                result.table.rows.len(),
                out.display()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
