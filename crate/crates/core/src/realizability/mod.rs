//! Which gender words a population realizes, and from where.
//!
//! A finite word is matched against vertex genders (`g(v_i) = w_i`); an
//! infinite sequence against edge genders. Both agree on vertex-gendered
//! populations up to the final symbol.

pub mod avoidable;
pub mod periodic;
pub mod represent;
pub mod search;

use thiserror::Error;

pub use avoidable::{
    avoidable_sequence, avoidable_sequence_carlson, avoidable_sequence_hunts, block, minimal_block,
    minimal_block_carlson, minimal_block_hunts, BlockSequence, HeightPolicy, DEFAULT_CAP,
};
pub use periodic::{realize_eventually_periodic, realize_periodic};
pub use represent::{
    formula_blocks_carlson, least_nonrepresentable, representable, RepresentabilityQuery, Scale, Witness,
};
pub use search::{find_realizing_path, impossible_at_height, HeightProber};

use crate::generators::GrowthError;
use crate::population::PopulationError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Population(#[from] PopulationError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error("the word is empty")]
    EmptyWord,
    #[error("{0}")]
    InvalidInput(String),
    #[error("search reached the boundary of the depth-{depth} truncation before deciding")]
    DepthInsufficient { depth: u32 },
    #[error("search cap {cap} exceeded")]
    CapExceeded { cap: u64 },
    #[error("no block up to the constructive bound {bound} is impossible at height {k}")]
    BoundViolated { bound: u64, k: u64 },
    #[error("prefix is realizable at no height within {limit} of height {from}")]
    HeightScan { from: u64, limit: u64 },
    #[error("no realizing path of {target_len} vertices in the depth-{depth} truncation; expand deeper")]
    NotFoundAtDepth { target_len: usize, depth: u32 },
    #[error("sequence has no periodic part")]
    NotPeriodic,
    #[error("assembled word has a run of {run} equal genders")]
    RunTooLong { run: usize },
    #[error("prefix {prefix} is realizable at height {k}")]
    Unverified { prefix: String, k: u64 },
}
