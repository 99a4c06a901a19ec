use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Exact evaluation of two-dimensional TQFTs from commutative Frobenius algebras.
#[derive(Debug, Parser)]
#[command(name = "tqft", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct AlgebraArg {
    /// Algebra file (TOML).
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Debug, Clone, Copy, Args)]
struct SizeArg {
    /// Largest admissible d^in × d^max_width during evaluation.
    #[arg(long, default_value_t = tqft2d::eval::DEFAULT_SIZE_CAP)]
    size_cap: u128,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    /// Algebra files; the shipped examples are used when none is given.
    #[arg(long)]
    algebra: Vec<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random words.
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Widest boundary in a generated word. Moves can widen a word by two strands.
    #[arg(long, default_value_t = 3)]
    max_width: usize,
    #[arg(long, default_value_t = 6)]
    max_layers: usize,
    #[command(flatten)]
    size: SizeArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the algebra laws and the Frobenius axioms.
    Check(AlgebraArg),
    /// Split into indecomposable summands.
    Decompose(AlgebraArg),
    /// Classify an indecomposable Frobenius algebra.
    Classify(AlgebraArg),
    /// Evaluate a cobordism word.
    Eval {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        word: String,
        /// Evaluate through the normal form instead of layer by layer.
        #[arg(long)]
        normal: bool,
        #[command(flatten)]
        size: SizeArg,
    },
    /// Closed-surface invariants for genus 0..=max-genus.
    Invariant {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 6)]
        max_genus: u32,
    },
    /// Random words under every applicable move must evaluate identically.
    CerfFuzz(FuzzArgs),
    /// Random words must agree with their normal-form evaluation.
    OracleFuzz(FuzzArgs),
    /// Check Z = Z_1 + Z_2 for the direct sum of two algebras.
    Sumcheck {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        /// Connected words to check; defaults to a cylinder, a twice-punctured torus and
        /// closed surfaces of genus 0 to 3.
        #[arg(long)]
        word: Vec<String>,
        #[command(flatten)]
        size: SizeArg,
    },
    /// Two inequivalent theories with equal closed invariants.
    Counterexample {
        #[arg(long, default_value_t = 6)]
        max_genus: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.error);
            ExitCode::from(failure.exit_code())
        }
    }
}
