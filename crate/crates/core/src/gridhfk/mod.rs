//! Knot Floer homology of grid diagrams: states, bigradings, the tilde
//! differential, GF(2) homology, deconvolution and the canonical transverse
//! cycles.

mod complex;
mod diagram;
mod ranks;
mod state;
mod transverse;

use thiserror::Error;

pub use complex::{
    default_cap, differential_tilde, gradings, homology, homology_with_cap, DEFAULT_GRID_CAP,
    GRID_CAP_ENV,
};
pub use diagram::GridDiagram;
pub use ranks::{deconvolve, BigradedRanks};
pub use state::GridState;
pub use transverse::{
    is_nonzero_class, is_nonzero_class_with_cap, transverse_state, CycleClass, TransverseVariant,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("grid presents a link with {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("grid size {size} exceeds the cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("ranks are not divisible by the stabilization factor")]
    InexactDivision,
    #[error("chain is not homogeneous in the expected bigrading")]
    GradingMismatch,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("illegal grid move: {0}")]
    IllegalMove(String),
}

/// Homology of a knot grid with the stabilization factor divided out.
pub fn knot_floer_homology(g: &GridDiagram) -> Result<BigradedRanks, GridError> {
    deconvolve(&homology(g)?, g.size())
}
