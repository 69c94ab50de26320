//! Lorenz braids of positive words.

mod braid;
mod rings;
mod svg;

pub use braid::{
    closed_form_staircase, trip_number, validate_staircase, williams_braid, y_vector,
    BraidPermutation, BraidRecord, LorenzBraid, MAX_STRANDS,
};
pub use rings::{intersection_budget, ring_partition, RingPartition, StrandRange};
pub use svg::render_braid;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("word {0} is a proper power; its orbit is not a knot")]
    NonPrimitiveWord(String),
    #[error("invalid staircase exponents: {0}")]
    InvalidStaircase(String),
    #[error("displacement vector must be nonempty, positive and nondecreasing")]
    InvalidDisplacements,
    #[error("word has {0} letters, more than the supported {MAX_STRANDS}")]
    TooManyStrands(u64),
    #[error("ring count {rings} exceeds 2·{trip} + 2")]
    RingBoundViolated { rings: usize, trip: usize },
}
