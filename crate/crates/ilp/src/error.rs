use thiserror::Error;

#[derive(Debug, Error)]
pub enum IlpError {
    #[error("design shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("partition fixing does not apply: {0}")]
    NotApplicable(String),
    #[error("inconsistent fixed edges: {0}")]
    InconsistentFixedEdges(String),
    #[error("cannot branch on edge-regularity: lambda' = {0} is not an integer")]
    NonIntegralLambdaBranch(String),
    #[error("no design files given for a design-driven campaign")]
    MissingDesigns,
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
