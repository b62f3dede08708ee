use serde::Serialize;

use super::Resources;
use crate::phoneset::{to_stressed, Phone, StressedPhone};
use crate::postagger::Tag;
use crate::prosody::ProsodySettings;
use crate::textnorm::{number_to_words, split_mixed, tokenize, TokenKind};

/// Variant of "the" used before a vowel.
const THE_BEFORE_VOWEL: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PronunciationSource {
    Homograph,
    Lexicon,
    Number,
    Mixed,
    G2p,
    Punctuation,
}

/// One row of the preprocessing table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TokenInfo {
    pub text: String,
    pub kind: TokenKind,
    pub sentence: usize,
    /// Absent for punctuation.
    pub tag: Option<Tag>,
    /// Arpabet with stress digits, diphthongs decomposed.
    pub phones: Vec<StressedPhone>,
    pub source: PronunciationSource,
    /// Seconds of silence rendered for punctuation.
    pub pause: f64,
}

fn stressed_or_empty(raw: &[String]) -> Vec<StressedPhone> {
    to_stressed(raw).unwrap_or_else(|e| {
        log::warn!("pronunciation {raw:?} dropped: {e}");
        Vec::new()
    })
}

impl Resources {
    /// Dictionary pronunciation (variant 0), else grapheme-to-phoneme.
    pub fn pronounce_word(&self, word: &str) -> (Vec<StressedPhone>, PronunciationSource) {
        if let Some(p) = self.lexicon.lookup(word, None) {
            return (stressed_or_empty(p), PronunciationSource::Lexicon);
        }
        let decoded = self.g2p.decode(word);
        if !decoded.silent_letters.is_empty() {
            log::warn!("g2p: no graphone for {:?} in {word:?}", decoded.silent_letters);
        }
        (stressed_or_empty(&decoded.phonemes), PronunciationSource::G2p)
    }

    fn pronounce_words(&self, words: &[String]) -> Vec<StressedPhone> {
        words
            .iter()
            .flat_map(|w| w.split('-'))
            .filter(|w| !w.is_empty())
            .flat_map(|w| self.pronounce_word(w).0)
            .collect()
    }

    /// Tokenizes, tags each sentence and pronounces every token.
    pub fn preprocess(&self, text: &str, settings: &ProsodySettings) -> Vec<TokenInfo> {
        let tokens = tokenize(text);
        let mut tags: Vec<Option<Tag>> = vec![None; tokens.len()];
        let mut start = 0;
        while start < tokens.len() {
            let sentence = tokens[start].sentence;
            let end = start
                + tokens[start..]
                    .iter()
                    .take_while(|t| t.sentence == sentence)
                    .count();
            let idx: Vec<usize> = (start..end)
                .filter(|&i| tokens[i].kind != TokenKind::Punct)
                .collect();
            let words: Vec<&str> = idx.iter().map(|&i| tokens[i].text.as_str()).collect();
            for (&i, t) in idx.iter().zip(self.tagger.tag_words(&words, true)) {
                tags[i] = Some(t);
            }
            start = end;
        }
        let mut out: Vec<TokenInfo> = tokens
            .into_iter()
            .zip(tags)
            .map(|(tok, tag)| {
                let (phones, source, pause) = match tok.kind {
                    TokenKind::Punct => (Vec::new(), PronunciationSource::Punctuation, settings.pause_for(&tok.text)),
                    TokenKind::Number => (
                        self.pronounce_words(&number_to_words(&tok.text.replace(',', ""))),
                        PronunciationSource::Number,
                        0.0,
                    ),
                    TokenKind::Mixed => (self.pronounce_words(&split_mixed(&tok.text)), PronunciationSource::Mixed, 0.0),
                    TokenKind::Word => {
                        match tag.and_then(|t| self.lexicon.homograph_variant(&tok.text, t)) {
                            Some(p) => (stressed_or_empty(p), PronunciationSource::Homograph, 0.0),
                            None => {
                                let (p, s) = self.pronounce_word(&tok.text);
                                (p, s, 0.0)
                            }
                        }
                    }
                };
                TokenInfo {
                    text: tok.text,
                    kind: tok.kind,
                    sentence: tok.sentence,
                    tag,
                    phones,
                    source,
                    pause,
                }
            })
            .collect();
        self.apply_the_rule(&mut out);
        out
    }

    /// "the" takes its long-vowel variant when the next word starts with a
    /// vowel.
    fn apply_the_rule(&self, tokens: &mut [TokenInfo]) {
        for i in 0..tokens.len().saturating_sub(1) {
            if !tokens[i].text.eq_ignore_ascii_case("the") || tokens[i].source != PronunciationSource::Lexicon {
                continue;
            }
            let next_vowel = tokens[i + 1]
                .phones
                .first()
                .is_some_and(|p| p.phone.is_vowel());
            if !next_vowel {
                continue;
            }
            let variant = self
                .lexicon
                .entry("the")
                .and_then(|e| e.pronunciations.get(THE_BEFORE_VOWEL));
            if let Some(p) = variant {
                tokens[i].phones = stressed_or_empty(p);
            }
        }
    }
}

/// Phones of a token list joined into one stream, for display.
pub fn phone_string(phones: &[StressedPhone]) -> String {
    phones
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whether any token produces sound.
pub fn is_silent(tokens: &[TokenInfo]) -> bool {
    tokens.iter().all(|t| t.phones.iter().all(|p| p.phone == Phone::X))
}
