//! `extlearn`: build, compare and interpret learners from the command line.
//!
//! Exit status is 0 when the command ran and its question was settled, 2 when
//! a bounded search ran out of budget, and 1 on any error.

mod commands;
mod io;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "extlearn", version, about = "Extensional learners over finite sets")]
pub struct Cli {
    /// Print machine-readable JSON instead of a report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Constructions on learners read from JSON files.
    #[command(subcommand)]
    Learner(LearnerCmd),
    /// Decide a relation between two learners.
    Equiv(EquivArgs),
    /// The compact closed image of a learner.
    Fhat(FhatArgs),
    /// Compare two learners after identifying snakes with identities.
    AtempCompare(AtempArgs),
    /// Terms of the free symmetric monoidal category on a signature.
    #[command(subcommand)]
    Freesmc(FreesmcCmd),
    /// Smooth learners.
    #[command(subcommand)]
    Smooth(SmoothCmd),
}

#[derive(Subcommand, Debug)]
pub enum LearnerCmd {
    /// Sequential composite of two or more learners, first to last.
    Compose {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Parallel composite.
    Tensor { left: PathBuf, right: PathBuf },
    /// The dual learner.
    Dual { file: PathBuf },
    /// The dual of an intensional learner.
    DualInt { file: PathBuf },
    /// The double dual of an intensional learner.
    DoubleDual { file: PathBuf },
    /// The decomposition into a parametrised optic.
    Decompose { file: PathBuf },
    /// The intensional form of a coend representative.
    ToInt { file: PathBuf },
    /// The coend representative of an intensional learner.
    ToCoend { file: PathBuf },
    /// The snake composite on the object (A, 1).
    Snake {
        /// Size of A.
        #[arg(long = "A")]
        a: usize,
        /// Compare the snake with the identity instead of printing it.
        #[arg(long)]
        check: bool,
        /// Largest parameter set visited by the comparison.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EquivKind {
    /// Isomorphism of parameter sets.
    Int,
    /// One extensional step from the first learner to the second.
    Ext,
    /// The equivalence generated by extensional steps.
    ExtClosure,
    /// A 2-morphism from the first learner to the second.
    #[value(name = "2mor")]
    TwoMor,
    /// A surjective 2-morphism from the first learner to the second.
    Surj,
    /// The equivalence generated by surjective 2-morphisms.
    SurjClosure,
    /// Equality in the coend.
    Coend,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    #[arg(long, value_enum)]
    pub kind: EquivKind,
    pub first: PathBuf,
    pub second: PathBuf,
    /// Largest parameter set visited by closure searches.
    #[arg(long, default_value_t = 4)]
    pub bound: usize,
    /// Learners generated before a closure search gives up.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Skip the invariant refutations and search directly.
    #[arg(long)]
    pub no_invariant: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Rel,
    Count,
}

#[derive(Args, Debug)]
pub struct FhatArgs {
    pub file: Option<PathBuf>,
    #[arg(long = "learner", conflicts_with = "file")]
    pub learner: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModelArg::Rel)]
    pub model: ModelArg,
}

#[derive(Args, Debug)]
pub struct AtempArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Further models tried after relations.
    #[arg(long, value_enum)]
    pub model: Vec<ModelArg>,
}

#[derive(Subcommand, Debug)]
pub enum FreesmcCmd {
    /// Parse and typecheck every term and learner in a document.
    Check { file: PathBuf },
    /// Evaluate a term as a function between finite sets.
    Eval {
        file: PathBuf,
        /// Name of a term in the document, or a term.
        term: String,
        /// Interpretation as JSON; drawn at random from the seed otherwise.
        #[arg(long)]
        interp: Option<PathBuf>,
        /// Largest object drawn by a random interpretation.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Decide equality of two terms in the free symmetric monoidal category.
    Eq {
        file: PathBuf,
        first: String,
        second: String,
    },
    /// Compare two formal learners under random interpretations.
    Atemp {
        file: PathBuf,
        first: String,
        second: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActivationArg {
    Identity,
    Logistic,
}

#[derive(Subcommand, Debug)]
pub enum SmoothCmd {
    /// Train a neuron, its dual and its double dual on one random stream.
    NeuronDual {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        steps: usize,
        /// Gradient step of the parameter update.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, value_enum, default_value_t = ActivationArg::Logistic)]
        activation: ActivationArg,
        /// Also write the per-step table to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&report.value).expect("JSON value") + "\n"
            } else if report.text.ends_with('\n') {
                report.text
            } else {
                report.text + "\n"
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if report.undecided {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
