use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

/// Exact Moyal-product metrics and Berry connections.
#[derive(Parser, Debug)]
#[command(name = "moyal", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Star product of two expressions.
    Star {
        a: String,
        b: String,
        #[arg(long)]
        latex: bool,
    },
    /// Moyal adjoint of an expression.
    Dagger {
        a: String,
        #[arg(long)]
        latex: bool,
    },
    /// Exit 1 unless the expression equals its adjoint.
    CheckHermitian { a: String },
    /// Differential operator `Θ ↦ H⋆Θ − Θ⋆H†` of a model.
    Pde {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        latex: bool,
    },
    /// Residual of a metric candidate (or of an observable's equation).
    Residual {
        #[command(flatten)]
        model: ModelArg,
        /// `poly:EXPR`, `expquad:[P*]exp(Q)` or a bare expression.
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, value_enum)]
        observable: Option<Observable>,
    },
    /// Perturbative metric of `p² + g V(x)` with zero integration functions.
    Solve {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        latex: bool,
    },
    /// Star logarithm of a solved metric or of a series file.
    Starlog {
        #[arg(long, conflicts_with = "series")]
        model: Option<PathBuf>,
        /// Series JSON with constant term 1.
        #[arg(long)]
        series: Option<PathBuf>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum)]
        observable: Option<Observable>,
        #[arg(long)]
        latex: bool,
    },
    /// Hermiticity and positivity of solved metrics.
    Certify {
        /// One or more model files; repeat the flag for a batch.
        #[arg(long, required = true)]
        model: Vec<PathBuf>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Gaussian metrics of the quadratic model.
    Family {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum)]
        observable: Option<Observable>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Connection of the 2×2 model at a point, or the exceptional-point
    /// monodromy when no point is given.
    Berry2x2 {
        #[command(flatten)]
        point: PointArg,
    },
    /// Phase-space Berry connection of the quadratic oscillator family.
    BerryOsc {
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        point: PointArg,
    },
    /// Sign of `4q₁ + q₂²` on a grid (or at one point).
    ScanLocus {
        #[command(flatten)]
        point: PointArg,
        /// Half-width of the square grid.
        #[arg(long, default_value_t = 2.0)]
        extent: f64,
        /// Grid points per axis.
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Random-pair check of the finite clock/shift star product.
    FiniteOracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// LaTeX for a model's Hamiltonian and, if coupled, its metric and log.
    EmitLatex {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct ModelArg {
    #[arg(long = "model")]
    path: PathBuf,
}

#[derive(Args, Debug)]
struct PointArg {
    #[arg(long, allow_hyphen_values = true, requires = "q2")]
    q1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "q1")]
    q2: Option<f64>,
}

impl PointArg {
    fn get(&self) -> Option<[f64; 2]> {
        Some([self.q1?, self.q2?])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Observable {
    P,
    X,
    #[value(name = "N")]
    N,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("reports serialize");
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
