//! Command-line front end for `char2quad`: argument definitions, the text
//! grammar for operands, and report generation.

pub mod commands;
pub mod grammar;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{run, Outcome};

pub const EXIT_ANSWER: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Clone, Parser)]
#[command(name = "char2quad", version, about = "Quadratic forms and quaternion algebras over GF(2^k)(t)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Order q = 2^k of the constant field.
    #[arg(long, global = true, default_value_t = 2)]
    pub field: u64,
    /// Defining polynomial of GF(q) over GF(2), e.g. "t^4+t+1".
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Degree budget for randomized searches.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,
    /// Accepted for compatibility; all work runs on the calling thread.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Nontrivial zero of a1·N(a2) ⊥ a3·N(a4), or a Gram matrix form.
    SolveQuaternary {
        #[arg(long, required_unless_present = "gram")]
        a1: Option<String>,
        #[arg(long, required_unless_present = "gram")]
        a2: Option<String>,
        #[arg(long, required_unless_present = "gram")]
        a3: Option<String>,
        #[arg(long, required_unless_present = "gram")]
        a4: Option<String>,
        /// Sixteen comma-separated entries, row by row; Q(v) = vᵀGv.
        #[arg(long, conflicts_with_all = ["a1", "a2", "a3", "a4"])]
        gram: Option<String>,
    },
    /// (x, y) with a1·(x² + xy + a2·y²) = c.
    SolveBinary {
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        c: String,
    },
    /// Residue symbol [a, place).
    Symbol {
        #[arg(long)]
        a: String,
        #[arg(long)]
        place: String,
    },
    /// a = a' + h² + h with every pole of a' of odd order.
    Minimize {
        #[arg(long)]
        a: String,
    },
    /// Whether [a, b⟩ is split, with a zero divisor when it is.
    IsSplit {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Places where [a, b⟩ ramifies.
    RamifiedPlaces {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// A quaternion algebra ramified exactly at the given places.
    ConstructRamified {
        /// Comma-separated places, e.g. "t,t+1" or "t^2+t+1,inf".
        #[arg(long)]
        places: String,
    },
    /// u in [a, b⟩ with u² + u = c.
    EmbedSubfield {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
}
