use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dual_rbvp::cli::{self, Mode, SolveOptions};
use dual_rbvp::Basis;

#[derive(Parser)]
#[command(name = "dual-rbvp", version, about = "Riemann boundary value problems in the dual complex numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisChoice {
    Biharmonic,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem in a JSON file and write the result
    Solve {
        problem: PathBuf,
        #[arg(long, default_value = "auto")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long = "tol-residual")]
        tol_residual: Option<f64>,
    },
    /// Check a result file against its problem
    Verify {
        problem: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "tol-residual")]
        tol_residual: Option<f64>,
    },
    /// Print the index of the coefficient G and the raw winding
    Index {
        problem: PathBuf,
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Evaluate an expression at the point x·e1 + y·e2
    Eval {
        expression: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, value_enum, default_value = "biharmonic")]
        basis: BasisChoice,
    },
}

fn main() -> ExitCode {
    let code = match Cli::parse().command {
        Command::Solve { problem, mode, out, nodes, tol_residual } => {
            let options = SolveOptions { mode: Some(mode), nodes, tol_residual };
            cli::run_solve(&problem, &options, out.as_deref())
        }
        Command::Verify { problem, solution, out, tol_residual } => {
            cli::run_verify(&problem, &solution, tol_residual, out.as_deref())
        }
        Command::Index { problem, nodes } => cli::run_index(&problem, nodes),
        Command::Eval { expression, x, y, t, basis } => {
            let basis = match basis {
                BasisChoice::Biharmonic => Basis::biharmonic(),
                BasisChoice::Classical => Basis::classical(),
            };
            cli::run_eval(&expression, x, y, t, &basis)
        }
    };
    ExitCode::from(code as u8)
}
