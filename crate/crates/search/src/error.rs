use thiserror::Error;

use crate::engine::SearchOutcome;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search input: {0}")]
    Domain(String),
    #[error(
        "budget exhausted after {} expanded nodes; {} results so far are incomplete",
        .0.stats.nodes_expanded,
        .0.graphs.len()
    )]
    BudgetExceeded(Box<SearchOutcome>),
    #[error("bad checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
