use thiserror::Error;

use crate::semigraph::{LinkId, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("no link {0} in the semi-graph")]
    NoSuchLink(LinkId),
    #[error("no vertex {0} in the semi-graph")]
    NoSuchVertex(VertexId),
    #[error("link {0} is not an edge")]
    NotAnEdge(LinkId),
    #[error("link {0} is not a semi-edge")]
    NotASemiEdge(LinkId),
    #[error("operation would create a self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("label {0:?} is already used by another link")]
    DuplicateLabel(String),
    #[error("no link carries label {0:?}")]
    NoSuchLabel(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("assignment does not cover link {0}")]
    Partial(LinkId),
    #[error("format error: {0}")]
    Format(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("registry error: {0}")]
    Registry(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
