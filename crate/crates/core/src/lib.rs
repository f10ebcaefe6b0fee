//! Gendered genealogical populations, the Carlson and Hunts families,
//! exact search for realizable and impossible gender sequences, and a
//! Life-like cellular automaton whose gameplay is read as a population.

pub mod generators;
pub mod life;
pub mod population;
pub mod realizability;
pub mod sequence;

use thiserror::Error;

pub use generators::{FamilyKind, GrowthFunction, LayeredFamily, PopulationFamily};
pub use population::{DirectedPath, Gender, Population, PopulationBuilder, VertexId};
pub use sequence::{GenderSequence, Word};

/// Any failure surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Population(#[from] population::PopulationError),
    #[error(transparent)]
    Word(#[from] sequence::WordError),
    #[error(transparent)]
    Growth(#[from] generators::GrowthError),
    #[error(transparent)]
    Search(#[from] realizability::SearchError),
    #[error(transparent)]
    Life(#[from] life::LifeError),
    #[error(transparent)]
    Rle(#[from] life::rle::RleError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
