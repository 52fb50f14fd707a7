//! Command-line definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};
use goodstein_core::{DEFAULT_BIT_BUDGET, DEFAULT_EXPANSION_CAP, DEFAULT_MAX_STEPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "goodstein", version, about = "Ordinals below epsilon_0, Goodstein sequences and their certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Largest number of steps a sequence run may take
    #[arg(long, env = "GOODSTEIN_MAX_STEPS", default_value_t = DEFAULT_MAX_STEPS, global = true)]
    pub max_steps: u64,

    /// Largest decimal value, in bits, that will be printed or evaluated
    #[arg(long, env = "GOODSTEIN_BIT_BUDGET", default_value_t = DEFAULT_BIT_BUDGET, global = true)]
    pub bit_budget: u64,

    /// Largest number of monomials one decrement may introduce
    #[arg(long, env = "GOODSTEIN_EXPANSION_CAP", default_value_t = DEFAULT_EXPANSION_CAP, global = true)]
    pub expansion_cap: u64,

    /// Seed for randomized property suites
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinal arithmetic
    #[command(subcommand)]
    Ord(OrdCommand),
    /// Hereditary base-b numerals
    #[command(subcommand)]
    Num(NumCommand),
    /// Goodstein sequences
    #[command(subcommand)]
    Gs(GsCommand),
    /// Slowdown pipeline stages
    #[command(subcommand)]
    Pipe(PipeCommand),
    /// Property suites
    Check {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrdCommand {
    /// Compare two ordinals: LT, EQ or GT
    Cmp { a: String, b: String },
    /// a + b
    Add { a: String, b: String },
    /// w^a * b
    Mul { a: String, b: String },
    /// The length measure |a|
    Len { a: String },
    /// Largest coefficient ko(a)
    Ko { a: String },
    /// The tower w_n
    Tower { n: usize },
    /// Least t with a < w_t
    Height { a: String },
}

#[derive(Debug, Subcommand)]
pub enum NumCommand {
    /// Complete base-b representation of m
    Decompose {
        m: String,
        #[arg(long, default_value = "2")]
        base: String,
    },
    /// Replace base `from` by `to` throughout
    Shift {
        /// A decimal number or a term over b
        m: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Print the decimal value instead of the term
        #[arg(long)]
        eval: bool,
    },
    /// Replace the base by w
    ToOrd {
        m: String,
        #[arg(long, default_value = "2")]
        base: String,
    },
    /// Replace w by the base
    FromOrd {
        a: String,
        #[arg(long, default_value = "2")]
        base: String,
        #[arg(long)]
        eval: bool,
    },
    /// Subtract one, symbolically
    Dec {
        m: String,
        #[arg(long, default_value = "2")]
        base: String,
        #[arg(long)]
        eval: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GsCommand {
    /// Run a sequence from m
    Run {
        m: String,
        /// shift:C, constant:B or table:B0,B1,...
        #[arg(long, default_value = "shift:2")]
        schedule: String,
    },
    /// Steps until the special sequence from m reaches zero
    Length {
        m: String,
        /// Give up after this many steps (defaults to --max-steps)
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Dominate a descending sequence of ordinals read from a file
    FromOrdinals { file: String },
    /// Check an exported trace against a descending sequence
    Verify { trace: String, file: String },
}

#[derive(Debug, Subcommand)]
pub enum PipeCommand {
    /// Evaluate the descent clock g(n, m)
    Clock {
        n: String,
        m: String,
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
    /// Pad a descending sequence into a slow one
    Slow {
        file: String,
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
    /// Bound the coefficients of a slow sequence
    Bound {
        file: String,
        /// Slowness constant; defaults to the least valid one
        #[arg(long)]
        k: Option<u64>,
    },
    /// Run the special sequence above a coefficient-bounded sequence
    Witness {
        file: String,
        #[arg(long, default_value_t = 50)]
        horizon: u64,
    },
    /// All three stages
    Full {
        file: String,
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value_t = 50)]
        horizon: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ordinal,
    Numeral,
    Goodstein,
    Domination,
    Grz,
    Majorize,
    Clock,
    Pipeline,
    All,
}
