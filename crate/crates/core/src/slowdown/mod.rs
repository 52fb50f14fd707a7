//! The hierarchy, the descent clocks, and the three-stage slowdown pipeline.

pub mod clock;
pub mod grz;
pub mod pipeline;

pub use clock::{build_clock, clock_decompose, clock_eval, DescentClock};
pub use grz::{grz_eval, grz_iterate, majorization_check, FunctionTable, GrzLevel, MajorizationReport};
pub use pipeline::{
    coeff_bound_transform, full_pipeline, slow_transform, special_witness, EvidenceStatus, PipelineBundle,
    PipelineError, PrefixKind, SequencePrefix, Stage,
};
