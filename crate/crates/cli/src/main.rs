//! `ginv`: Drazin/group inverses and block-matrix theorem checks from the
//! command line.
//!
//! Exit codes: 0 success, 1 mismatch or failed hypothesis, 2 parse error,
//! 3 verification failure, 4 unknown theorem id, 5 infeasible generator spec.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ginv_core::block::Corner;
use ginv_core::generator::ConditionTag;
use ginv_core::io::Block;
use ginv_core::{Error, ScalarMode};

#[derive(Parser)]
#[command(name = "ginv", version, about = "Drazin and group inverses of 2x2 block matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance file (schema block-instance/1).
    file: PathBuf,
    /// Arithmetic to use; defaults to the file's scalar field.
    #[arg(long)]
    mode: Option<ScalarMode>,
}

#[derive(Subcommand)]
enum Command {
    /// Drazin inverse, index and axiom check of one matrix.
    Drazin {
        #[command(flatten)]
        input: Input,
        /// Which matrix: A, B, C, D or the assembled M.
        #[arg(long)]
        block: Option<Block>,
    },
    /// Group inverse of one matrix (exit 1 if it does not exist).
    Group {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        block: Option<Block>,
    },
    /// Index of one matrix.
    Index {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        block: Option<Block>,
    },
    /// Generalized Schur complements S, Z and their compressions.
    Schur {
        #[command(flatten)]
        input: Input,
    },
    /// Peirce corner projector and compression of M.
    Peirce {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "E")]
        corner: Corner,
    },
    /// Check a theorem on an instance (or a directory of instances).
    Verify {
        /// Theorem id, e.g. cor-4-3a.
        theorem: String,
        /// Instance file; omit when using --batch.
        #[arg(required_unless_present = "batch")]
        file: Option<PathBuf>,
        /// Verify every *.json file in a directory.
        #[arg(long, conflicts_with = "file")]
        batch: Option<PathBuf>,
        /// Fail immediately when a hypothesis does not hold.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        mode: Option<ScalarMode>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance satisfying a condition.
    Generate {
        #[arg(long)]
        condition: ConditionTag,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "index-a")]
        index_a: usize,
        #[arg(long = "index-d")]
        index_d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = ginv_core::generator::DEFAULT_ENTRY_BOUND)]
        entry_bound: u32,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the worked 5x5 example by two formulas and the oracle.
    PaperExample {
        /// Perturb the expected matrix; every route must then fail.
        #[arg(long)]
        inject_perturbation: bool,
        #[arg(long, default_value = "rational")]
        mode: ScalarMode,
    },
    /// Run the seeded property suite.
    Selftest {
        #[arg(long, env = "GINV_SEED", default_value_t = commands::DEFAULT_SEED)]
        seed: u64,
        /// Smaller counts for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisViolated { .. } | Error::Singular | Error::GroupInverseDoesNotExist => 1,
        Error::Parse(_) | Error::DimensionMismatch(_) | Error::NotSquare { .. } => 2,
        Error::VerificationFailure(_) | Error::Defect(_) => 3,
        Error::UnknownTheorem(_) => 4,
        Error::Infeasible(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Drazin { input, block } => commands::drazin(&input.file, input.mode, block),
        Command::Group { input, block } => commands::group(&input.file, input.mode, block),
        Command::Index { input, block } => commands::index(&input.file, input.mode, block),
        Command::Schur { input } => commands::schur(&input.file, input.mode),
        Command::Peirce { input, corner } => commands::peirce(&input.file, input.mode, corner),
        Command::Verify {
            theorem,
            file,
            batch,
            strict,
            mode,
            out,
        } => match batch {
            Some(dir) => commands::verify_batch(&theorem, &dir, strict, mode, out.as_deref()),
            None => commands::verify(&theorem, &file.expect("clap requires a file"), strict, mode, out.as_deref()),
        },
        Command::Generate {
            condition,
            n,
            m,
            index_a,
            index_d,
            seed,
            entry_bound,
            out,
        } => commands::generate(condition, n, m, index_a, index_d, seed, entry_bound, out.as_deref()),
        Command::PaperExample {
            inject_perturbation,
            mode,
        } => commands::paper_example(inject_perturbation, mode),
        Command::Selftest { seed, quick } => commands::selftest(seed, quick),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
