use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalars belong to different rings")]
    MixedRing,
    #[error("`{0}` is not a monomial unit")]
    NotAUnit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("elements belong to different presentations ({0} vs {1})")]
    MixedPresentation(String, String),
    #[error("rewriting exceeded the budget of {0} steps")]
    NonTerminating(usize),
    #[error("presentation `{0}` has no star structure")]
    NoStarStructure(String),
    #[error("confluence of `{name}` is verified up to degree {verified}, degree {requested} requested")]
    ConfluenceNotVerified {
        name: String,
        verified: usize,
        requested: usize,
    },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("cocycle `{0}` is not convolution invertible")]
    NotInvertible(String),
    #[error("linear system needs a non-unit pivot `{0}`")]
    NonUnitPivot(String),
    #[error("`{0}` is not finite dimensional within the degree limit")]
    NotFiniteDimensional(String),
    #[error("instance `{0}` has no {1} witness")]
    MissingWitness(String, &'static str),
    #[error("unsupported module: {0}")]
    UnsupportedModule(String),
    #[error("bicomodule compatibility failed for `{0}`")]
    CompatibilityFailure(String),
    #[error("sealing failed: {}", .0.summary())]
    SealingFailed(Box<Report>),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
