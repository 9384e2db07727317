//! Explicit edge colorings, vertex bicolorings and the structural
//! decomposition of 3-colorings, together with the closed-form bounds they feed.

mod bicoloring;
mod bounds;
mod decomposition;
mod explicit;

use thiserror::Error;

pub use bicoloring::{
    bicoloring_bound_from_sizes, bicoloring_search, bicoloring_to_bound, verify_bicoloring,
    Bicoloring,
};
pub use bounds::{cdr_product, cdr_sequence, closed_form_bounds, CdrTerm, ClosedFormBounds};
pub use decomposition::{
    decompose_3coloring, verify_decomposition, ClauseViolation, ColorRoles, DecompositionResult,
    FourParts, T2Partition,
};
pub use explicit::{bose_coloring, hole_coloring, skolem_coloring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("invalid hole: {0}")]
    InvalidHole(String),
    #[error("system carries no {0} labels")]
    MissingLabels(&'static str),
    #[error("triple {0} is monochromatic")]
    MonochromaticTriple(usize),
    #[error("triple {0} sees three colors")]
    RainbowTriple(usize),
    #[error("a color class is empty")]
    EmptyClass,
    #[error("vertex colors: {0}")]
    BadVertexColors(String),
    #[error("pair {{{0}, {1}}} lies in no triple")]
    PairUncovered(usize, usize),
    #[error("expected at most 3 colors, coloring has {0}")]
    TooManyColors(usize),
    #[error("coloring does not match the system")]
    ColoringMismatch,
    #[error("product needs the largest class last and at most the sum of the other two: {0:?}")]
    ProductShape([u64; 3]),
}
