use std::cmp::Ordering;

use super::model::TrigramModel;
use super::tags::{reduce_brown, Tag};
use crate::lexicon::PosLexicon;

/// Log-probabilities within this distance are treated as equal.
pub const TIE_EPSILON: f64 = 1e-9;

/// Higher score wins; near-equal scores go to the lexicographically smaller
/// candidate-index path, i.e. earlier candidates first.
fn better(score_a: f64, path_a: &[usize], score_b: f64, path_b: &[usize]) -> bool {
    if score_a > score_b + TIE_EPSILON {
        return true;
    }
    if score_b > score_a + TIE_EPSILON {
        return false;
    }
    path_a.cmp(path_b) == Ordering::Less
}

#[derive(Clone)]
struct State {
    score: f64,
    path: Vec<usize>,
}

impl TrigramModel {
    /// Most probable tag sequence given per-word candidate lists (each
    /// nonempty). Returns one candidate index per word.
    pub fn viterbi(&self, cands: &[Vec<Tag>]) -> Vec<usize> {
        assert!(cands.iter().all(|c| !c.is_empty()), "empty candidate list");
        match cands.len() {
            0 => return Vec::new(),
            1 => return vec![0],
            _ => {}
        }
        let (k0, k1) = (cands[0].len(), cands[1].len());
        let init = self.initial(&cands[0], &cands[1]);
        // states[a * k_cur + b]: previous word at a, current word at b
        let mut states: Vec<State> = (0..k0 * k1)
            .map(|ab| State {
                score: init[ab],
                path: vec![ab / k1, ab % k1],
            })
            .collect();
        for i in 2..cands.len() {
            let (kp, kc, kn) = (cands[i - 2].len(), cands[i - 1].len(), cands[i].len());
            let mut next: Vec<Option<State>> = vec![None; kc * kn];
            for a in 0..kp {
                for b in 0..kc {
                    let prev = &states[a * kc + b];
                    let trans = self.transition(cands[i - 2][a], cands[i - 1][b], &cands[i]);
                    for (c, lp) in trans.into_iter().enumerate() {
                        let score = prev.score + lp;
                        let slot = &mut next[b * kn + c];
                        let replace = match slot {
                            None => true,
                            Some(cur) => {
                                // paths to the same state share their last two
                                // entries, so comparing prefixes suffices
                                better(score, &prev.path, cur.score, &cur.path[..cur.path.len() - 1])
                            }
                        };
                        if replace {
                            let mut path = prev.path.clone();
                            path.push(c);
                            *slot = Some(State { score, path });
                        }
                    }
                }
            }
            states = next.into_iter().map(Option::unwrap).collect();
        }
        states
            .into_iter()
            .reduce(|best, s| {
                if better(s.score, &s.path, best.score, &best.path) {
                    s
                } else {
                    best
                }
            })
            .unwrap()
            .path
    }
}

/// Part-of-speech tagger over a trigram model and a part-of-speech lexicon.
#[derive(Clone, Debug, Default)]
pub struct Tagger {
    pub model: TrigramModel,
    pub lexicon: PosLexicon,
}

impl Tagger {
    pub fn new(model: TrigramModel, lexicon: PosLexicon) -> Self {
        Tagger { model, lexicon }
    }

    /// Candidate tags in lexicon order. All-digit tokens are nouns; words
    /// without usable lexicon codes may take any open class.
    pub fn candidate_tags(&self, word: &str) -> Vec<Tag> {
        if !word.is_empty() && word.chars().all(|c| c.is_ascii_digit()) {
            return vec![Tag::Noun];
        }
        let mut out: Vec<Tag> = Vec::new();
        for c in self.lexicon.codes(word).unwrap_or("").chars() {
            if let Some(t) = Tag::from_mpos_code(c) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        if out.is_empty() {
            out = Tag::OPEN.to_vec();
        }
        out
    }

    /// Override pins, applied left to right; an override that disagrees with
    /// a position already pinned is skipped.
    pub fn pins(&self, words: &[&str]) -> Vec<Option<Tag>> {
        let mut pins = vec![None; words.len()];
        for i in 0..words.len().saturating_sub(2) {
            let Some(tags) = self.model.override_for(&words[i..i + 3]) else {
                continue;
            };
            let clash = (0..3).any(|k| pins[i + k].is_some_and(|p| p != tags[k]));
            if clash {
                continue;
            }
            for k in 0..3 {
                pins[i + k] = Some(tags[k]);
            }
        }
        pins
    }

    /// Tags a sentence of words (punctuation already removed).
    pub fn tag_words(&self, words: &[&str], use_overrides: bool) -> Vec<Tag> {
        let pins = if use_overrides {
            self.pins(words)
        } else {
            vec![None; words.len()]
        };
        let cands: Vec<Vec<Tag>> = words
            .iter()
            .zip(&pins)
            .map(|(w, p)| match p {
                Some(t) => vec![*t],
                None => self.candidate_tags(w),
            })
            .collect();
        self.model
            .viterbi(&cands)
            .into_iter()
            .zip(&cands)
            .map(|(i, c)| c[i])
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TaggingAccuracy {
    pub words: usize,
    pub base_correct: usize,
    pub override_correct: usize,
}

impl TaggingAccuracy {
    pub fn base_pct(&self) -> f64 {
        100.0 * self.base_correct as f64 / self.words.max(1) as f64
    }

    pub fn override_pct(&self) -> f64 {
        100.0 * self.override_correct as f64 / self.words.max(1) as f64
    }
}

/// Scores the tagger on Brown-format text, one sentence of `word/TAG`
/// tokens per line. Punctuation is dropped before tagging; words whose
/// reference tag reduces to unknown or noun phrase are tagged but not scored.
pub fn evaluate_brown(tagger: &Tagger, text: &str) -> TaggingAccuracy {
    let mut acc = TaggingAccuracy::default();
    for line in text.lines() {
        let mut words = Vec::new();
        let mut gold = Vec::new();
        for tok in line.split_whitespace() {
            let Some((w, t)) = tok.rsplit_once('/') else { continue };
            if !w.chars().any(char::is_alphanumeric) {
                continue;
            }
            words.push(w);
            gold.push(reduce_brown(t));
        }
        if words.is_empty() {
            continue;
        }
        let base = tagger.tag_words(&words, false);
        let pinned = tagger.tag_words(&words, true);
        for i in 0..words.len() {
            if matches!(gold[i], Tag::Unknown | Tag::NounPhrase) {
                continue;
            }
            acc.words += 1;
            acc.base_correct += usize::from(base[i] == gold[i]);
            acc.override_correct += usize::from(pinned[i] == gold[i]);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tag::*;

    fn lexicon(text: &str) -> PosLexicon {
        PosLexicon::load_mpos(text.as_bytes(), "lex").unwrap()
    }

    #[test]
    fn candidates() {
        let t = Tagger::new(TrigramModel::default(), lexicon("the×Dv\nrun×tNi\nhalo×hN\n"));
        assert_eq!(t.candidate_tags("THE"), [Article, Adverb]);
        assert_eq!(t.candidate_tags("run"), [Verb, Noun]);
        assert_eq!(t.candidate_tags("halo"), [Noun]);
        assert_eq!(t.candidate_tags("rings"), Tag::OPEN);
        assert_eq!(t.candidate_tags("10"), [Noun]);
    }

    #[test]
    fn short_sentences() {
        let m = TrigramModel::from_trigram_counts([([Article, Noun, Verb], 5), ([Adverb, Verb, Verb], 9)])
            .unwrap();
        let t = Tagger::new(m, lexicon("the×Dv\ndove×NV\n"));
        assert_eq!(t.tag_words(&["the"], true), [Article]);
        assert_eq!(t.tag_words(&["the", "dove"], true), [Adverb, Verb]);
        assert!(t.tag_words(&[], true).is_empty());
    }

    #[test]
    fn empty_model_takes_first_candidates() {
        let t = Tagger::new(TrigramModel::default(), lexicon("the×Dv\ndove×NV\naway×vA\n"));
        assert_eq!(t.tag_words(&["the", "dove", "dove", "away"], true), [Article, Noun, Noun, Adverb]);
    }

    #[test]
    fn overrides_pin_left_to_right() {
        let mut m = TrigramModel::from_trigram_counts([([Noun, Noun, Noun], 10)]).unwrap();
        m.add_override(["i", "dove", "towards"], [Pronoun, Verb, Preposition]);
        m.add_override(["dove", "towards", "the"], [Noun, Preposition, Article]);
        let t = Tagger::new(m, lexicon("i×r\ndove×NV\ntowards×P\nthe×Dv\n"));
        let pins = t.pins(&["I", "DOVE", "TOWARDS", "THE"]);
        assert_eq!(pins, [Some(Pronoun), Some(Verb), Some(Preposition), None]);
        let tags = t.tag_words(&["I", "DOVE", "TOWARDS", "THE"], true);
        assert_eq!(tags[1], Verb);
    }

    #[test]
    fn evaluates_on_its_own_training_sentence() {
        let m = TrigramModel::from_trigram_counts([
            ([Article, Noun, Verb], 5),
            ([Noun, Verb, Adverb], 5),
        ])
        .unwrap();
        let t = Tagger::new(m, lexicon("the×D\ndog×NV\nbarks×pV\nloudly×v\n"));
        let acc = evaluate_brown(&t, "The/AT dog/NN barks/VBZ loudly/RB ./.\n");
        assert_eq!(acc.words, 4);
        assert_eq!(acc.base_correct, 4);
        assert_eq!(acc.base_pct(), 100.0);
    }
}
