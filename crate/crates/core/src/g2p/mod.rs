//! Grapheme-to-phoneme conversion with a graphone confidence table and
//! shortest-path decoding.

mod align;
mod decode;
mod eval;
mod table;

pub use align::{align_corpus, initial_align, AlignmentReport, ClusterPronunciations};
pub use decode::Decoded;
pub use eval::{evaluate, classify, Accuracy, Outcome};
pub use table::{Graphone, GraphoneTable, TrainReport};

use crate::lexicon::PronunciationLexicon;

/// Longest grapheme cluster, not counting a boundary token.
pub const MAX_GRAPHEMES: usize = 4;
pub const WORD_START: char = '(';
pub const WORD_END: char = ')';

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub graphemes: String,
    pub phonemes: Vec<String>,
}

impl Segment {
    pub fn new(graphemes: &str, phonemes: Vec<String>) -> Self {
        Segment {
            graphemes: graphemes.to_string(),
            phonemes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignedWord {
    pub word: String,
    pub segments: Vec<Segment>,
}

impl AlignedWord {
    pub fn is_consistent(&self) -> bool {
        let letters: String = self.segments.iter().map(|s| s.graphemes.as_str()).collect();
        letters == self.word
            && self
                .segments
                .iter()
                .all(|s| !s.graphemes.is_empty() && !s.phonemes.is_empty())
    }

    pub fn phonemes(&self) -> Vec<&str> {
        self.segments
            .iter()
            .flat_map(|s| s.phonemes.iter().map(String::as_str))
            .collect()
    }
}

pub fn strip_stress(sym: &str) -> &str {
    sym.trim_end_matches(|c: char| c.is_ascii_digit())
}

/// Training and evaluation material: lowercase alphabetic headwords with
/// their first pronunciation, stress removed, sorted by word.
pub fn dictionary_words(lex: &PronunciationLexicon) -> Vec<(String, Vec<String>)> {
    lex.iter_sorted()
        .into_iter()
        .filter(|e| e.headword.chars().all(|c| c.is_ascii_alphabetic()))
        .map(|e| {
            let phones = e.pronunciations[0]
                .iter()
                .map(|p| strip_stress(p).to_string())
                .collect();
            (e.headword.to_lowercase(), phones)
        })
        .collect()
}
