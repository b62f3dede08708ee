//! Trigram hidden-Markov part-of-speech tagging over a reduced tagset.

mod model;
mod tagger;
mod tags;

pub use model::{BuildReport, TrigramModel, WordTrigram};
pub use tagger::{evaluate_brown, Tagger, TaggingAccuracy, TIE_EPSILON};
pub use tags::{reduce_brown, reduce_claws7, Tag};
