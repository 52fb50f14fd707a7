//! Symbolic arithmetic for ordinals below ε₀ and hereditary base-b numerals.
//!
//! The crate is organised bottom-up:
//!
//! - [`ordinal`]: complete Cantor normal forms, comparison, addition, `ω^α·β`,
//!   the length measure `|α|` and the largest coefficient `ko(α)`.
//! - [`numeral`]: complete base-b representations, base change, and the two
//!   bridges between numerals and ordinals. Values are kept as trees, so numbers
//!   like `3^(3^27)` cost a handful of nodes.
//! - [`goodstein`]: general and special Goodstein sequences, termination
//!   lengths, and domination certificates built from descending ordinal
//!   sequences.
//! - [`slowdown`]: the Grzegorczyk hierarchy, ordinal-valued descent clocks,
//!   and the transforms that turn a descending sequence into a slow one, then a
//!   coefficient-bounded one, then a special Goodstein sequence that provably
//!   stays above it.
//! - [`io`] and [`export`]: sequence files and JSON/CSV output.
//! - [`checks`]: seeded property suites used by the command line tool.

pub mod checks;
pub mod error;
pub mod export;
pub mod gen;
pub mod goodstein;
pub mod io;
pub mod numeral;
pub mod ordinal;
pub mod slowdown;
mod syntax;

pub use error::{Error, ResourceError, Result, ScheduleError};
pub use numeral::Numeral;
pub use ordinal::{Monomial, Ordinal};

/// Arbitrary-precision natural number.
pub type Natural = num_bigint::BigUint;

/// Guards applied by operations whose cost depends on the size of their output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest decimal value, in bits, that will be materialised.
    pub bit_budget: u64,
    /// Largest number of monomials a single decrement may introduce.
    pub expansion_cap: u64,
    /// Default horizon for sequence runs.
    pub max_steps: u64,
    /// Largest term, in nodes, that a constructor may produce.
    pub node_cap: usize,
    /// Largest Grzegorczyk value, in bits.
    pub magnitude_bits: u64,
}

pub const DEFAULT_BIT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_EXPANSION_CAP: u64 = 1 << 20;
pub const DEFAULT_MAX_STEPS: u64 = 10_000;
pub const DEFAULT_NODE_CAP: usize = 1 << 20;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            bit_budget: DEFAULT_BIT_BUDGET,
            expansion_cap: DEFAULT_EXPANSION_CAP,
            max_steps: DEFAULT_MAX_STEPS,
            node_cap: DEFAULT_NODE_CAP,
            magnitude_bits: DEFAULT_BIT_BUDGET,
        }
    }
}
