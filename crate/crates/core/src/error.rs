use thiserror::Error;

use crate::counterexamples::ConstructionError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("a point has no cone with respect to itself")]
    CoincidentPoints,

    #[error("cone count must be at least 2, got {0}")]
    InvalidConeCount(usize),

    #[error("disk radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("search cap must be positive, got {0}")]
    InvalidCap(f64),

    #[error("expected an undirected graph")]
    DirectedInput,

    #[error("invalid instance configuration: {0}")]
    InvalidConfig(String),

    #[error("label count {labels} does not match point count {points}")]
    LabelCount { labels: usize, points: usize },

    #[error(transparent)]
    Construction(#[from] ConstructionError),

    #[error("invalid file: {0}")]
    Format(String),
}
