use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("group elements are not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("sublattice has infinite index: {0}")]
    InfiniteIndex(String),

    #[error("not a sublattice: {0}")]
    NotSublattice(String),

    #[error("root system axiom violated: {0}")]
    RootAxiom(String),

    #[error("unknown root system {0:?}")]
    UnknownSystem(String),

    #[error("cones are not nested: {0}")]
    Incompatible(String),

    #[error("not an orthogonal set: {0}")]
    NotOrthogonal(String),

    #[error("orthogonal set is not positive: {0}")]
    NotPositive(String),

    #[error("exponential-polynomial fit failed: {0}")]
    Interpolation(String),

    #[error("invalid preset: {0}")]
    Preset(String),

    #[error("not a character of the subgroup: {0}")]
    NotACharacter(String),

    #[error("inconsistent cohomology data: {0}")]
    Inconsistent(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
