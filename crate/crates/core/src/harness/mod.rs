//! Exhaustive deck-injectivity checks over all small compact graph-like spaces.

mod cache;
mod enumerate;
mod report;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cache::{CacheError, DeckCache};
pub use enumerate::{enumerate_canonical, enumerate_multigraphs};
pub use report::{render_text, report_from_json, report_to_json};
pub use verify::{deck_hash, verify_deck_injectivity, verify_with_cache, Collision, InjectivityReport};

/// Size limits for the enumerated universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_edges: usize,
    pub connected_only: bool,
    pub min_points: usize,
}

impl EnumerationBudget {
    pub fn new(max_edges: usize) -> Self {
        Self {
            max_edges,
            connected_only: false,
            min_points: 3,
        }
    }

    pub fn connected(max_edges: usize) -> Self {
        Self {
            connected_only: true,
            ..Self::new(max_edges)
        }
    }

    pub fn validate(&self) -> Result<(), BudgetError> {
        if self.max_edges == 0 {
            return Err(BudgetError::NoEdges);
        }
        if self.min_points < 3 {
            return Err(BudgetError::TooFewPoints(self.min_points));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("max_edges must be at least 1")]
    NoEdges,
    #[error("min_points must be at least 3, got {0}")]
    TooFewPoints(usize),
}
