use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The two `dim_loc` routes disagree on a vertex.
    #[error(
        "internal inconsistency at n={n}, partition {partition}: clique route gives {clique}, capacity route gives {capacity}"
    )]
    Inconsistency {
        n: u32,
        partition: String,
        clique: u32,
        capacity: u32,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
