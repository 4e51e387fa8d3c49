use thiserror::Error;

use crate::diagram::DiagramError;
use crate::poly::PolyError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{found} crossings exceed the cap of {cap}")]
    TooManyCrossings { found: usize, cap: usize },
    #[error("skein descent failed to make progress")]
    NonTermination,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("bad tie indices ({0}, {1}) for {2} strands")]
    BadIndices(usize, usize, usize),
    #[error("missing data: {0}")]
    MissingData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
