//! Pluggable reward backends scoring (task, image tokens) into [0, 1].

mod backends;
mod mixed;
mod replay;

pub use backends::{OracleReward, SelfReward, Thresholded};
pub use mixed::{MixedReward, MixedRewardConfig};
pub use replay::{image_token_hash, ReplayReward};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gridworld::{GridworldError, TaskSpec, TokenId};

/// Scalar score in [0, 1] plus a per-criterion breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewardScore {
    pub value: f64,
    pub breakdown: Vec<(String, f64)>,
}

impl RewardScore {
    pub fn plain(value: f64) -> Self {
        RewardScore {
            value,
            breakdown: Vec::new(),
        }
    }

    /// The early-stop guard: strictly above the threshold passes; a score
    /// equal to the threshold does not.
    pub fn passes(&self, tau: f64) -> bool {
        self.value > tau
    }
}

#[derive(Debug, Error)]
pub enum RewardError {
    #[error("grid parse failed: {0}")]
    Grid(#[from] GridworldError),
    #[error("unknown sub-checker {0:?}")]
    UnknownChecker(String),
    #[error("invalid mixed-reward config: {0}")]
    InvalidConfig(String),
    #[error("no replay score for task {task_id} / image {image_hash}")]
    MissingReplayScore { task_id: String, image_hash: String },
    #[error("replay file: {0}")]
    ReplayIo(#[from] std::io::Error),
}

/// A reward backend scores the compatibility between a task and a generated
/// image token sequence (local image-vocabulary ids).
pub trait RewardBackend: Send + Sync {
    fn name(&self) -> &str;

    /// True when identical inputs always return identical scores.
    fn deterministic(&self) -> bool {
        true
    }

    fn score(&self, task: &TaskSpec, image_tokens: &[TokenId]) -> Result<RewardScore, RewardError>;
}
