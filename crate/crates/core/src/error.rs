use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency is not symmetric at ({u}, {w})")]
    Asymmetric { u: usize, w: usize },
    #[error("adjacency matrix is not square")]
    NotSquare,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("character {ch:?} at byte {pos} is outside the graph6 range 63..=126")]
    BadCharacter { ch: char, pos: usize },
    #[error("graph6 header declares {0} vertices; only 1..=64 are supported")]
    VertexCount(usize),
    #[error("graph6 body has {found} bytes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    Padding,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("classification is undefined for complete graphs")]
    CompleteGraph,
    #[error("classification needs at least 4 vertices, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("parameters outside the domain: {0}")]
    Domain(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid latin square: {0}")]
    InvalidSquare(String),
    #[error("block matrix is not symmetric at ({0}, {1})")]
    AsymmetricSpec(usize, usize),
    #[error("block matrix has a nonzero diagonal entry at {0}")]
    DiagonalNonzero(usize),
    #[error("block layout mismatch: {0}")]
    Layout(String),
    #[error("edge ({0}, {1}) missing before switching")]
    MissingEdge(usize, usize),
    #[error("edge ({0}, {1}) already present")]
    EdgeAlreadyPresent(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
