//! Diphone concatenation text-to-speech: front end (normalization, tagging,
//! pronunciation), voice building (diphone extraction) and back end
//! (prosody, pitch/duration shifting, concatenation).

pub mod audio;
pub mod bank;
pub mod config;
pub mod error;
pub mod eval;
pub mod extract;
pub mod g2p;
pub mod lexicon;
pub mod phoneset;
pub mod postagger;
pub mod prosody;
pub mod server;
pub mod signal;
pub mod synth;
pub mod textnorm;

pub use error::{Error, Result};
