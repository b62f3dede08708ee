use std::cmp::Ordering;

use super::table::{edge_key, GraphoneTable, TIE_EPSILON};
use super::MAX_GRAPHEMES;

#[derive(Clone, Debug, PartialEq)]
pub struct Decoded {
    /// Phones without stress, adjacent repeats collapsed.
    pub phonemes: Vec<String>,
    /// Graphone keys along the chosen path.
    pub keys: Vec<String>,
    /// Total cost, the sum of -ln(confidence) over the path.
    pub cost: f64,
    /// Set when no path existed and letters were converted one by one.
    pub fallback: bool,
    /// Letters with no single-letter graphone; rendered as silence.
    pub silent_letters: Vec<char>,
}

#[derive(Clone)]
struct Best {
    cost: f64,
    splits: Vec<usize>,
}

/// Path preference: lower cost, then fewer segments, then earlier splits.
fn compare(cost_a: f64, splits_a: &[usize], cost_b: f64, splits_b: &[usize]) -> Ordering {
    if cost_a < cost_b - TIE_EPSILON {
        return Ordering::Less;
    }
    if cost_b < cost_a - TIE_EPSILON {
        return Ordering::Greater;
    }
    splits_a
        .len()
        .cmp(&splits_b.len())
        .then_with(|| splits_a.cmp(splits_b))
}

fn collapse_repeats(phones: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(phones.len());
    for p in phones {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    out
}

impl GraphoneTable {
    /// Key of the edge covering letters `i..j` of an `len`-letter word, or
    /// `None` for the whole-word span (which would need both boundary tokens).
    pub fn edge(&self, word: &str, i: usize, j: usize) -> Option<(String, f64)> {
        let len = word.len();
        if i == 0 && j == len {
            return None;
        }
        let key = edge_key(word, i, j, i == 0, j == len);
        let g = self.get(&key)?;
        Some((key, g.cost()))
    }

    /// Shortest path through the decomposition graph of `word`.
    pub fn decode(&self, word: &str) -> Decoded {
        let word: String = word
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        let len = word.len();
        if len == 0 {
            return Decoded {
                phonemes: Vec::new(),
                keys: Vec::new(),
                cost: 0.0,
                fallback: false,
                silent_letters: Vec::new(),
            };
        }
        let mut best: Vec<Option<Best>> = vec![None; len + 1];
        best[0] = Some(Best {
            cost: 0.0,
            splits: Vec::new(),
        });
        for j in 1..=len {
            for i in j.saturating_sub(MAX_GRAPHEMES)..j {
                let Some(prev) = &best[i] else { continue };
                let Some((_, w)) = self.edge(&word, i, j) else {
                    continue;
                };
                let cost = prev.cost + w;
                let mut splits = prev.splits.clone();
                if i > 0 {
                    splits.push(i);
                }
                let better = match &best[j] {
                    None => true,
                    Some(cur) => compare(cost, &splits, cur.cost, &cur.splits) == Ordering::Less,
                };
                if better {
                    best[j] = Some(Best { cost, splits });
                }
            }
        }
        match best[len].take() {
            Some(b) => self.realize(&word, &b.splits, b.cost),
            None => self.fallback(&word),
        }
    }

    fn realize(&self, word: &str, splits: &[usize], cost: f64) -> Decoded {
        let len = word.len();
        let mut bounds = vec![0];
        bounds.extend_from_slice(splits);
        bounds.push(len);
        let mut keys = Vec::new();
        let mut phones = Vec::new();
        for w in bounds.windows(2) {
            let (key, _) = self.edge(word, w[0], w[1]).expect("edge on chosen path");
            phones.extend(self.get(&key).unwrap().phonemes.iter().cloned());
            keys.push(key);
        }
        Decoded {
            phonemes: collapse_repeats(phones),
            keys,
            cost,
            fallback: false,
            silent_letters: Vec::new(),
        }
    }

    fn fallback(&self, word: &str) -> Decoded {
        let mut phones = Vec::new();
        let mut keys = Vec::new();
        let mut silent = Vec::new();
        let mut cost = 0.0;
        for (i, c) in word.char_indices() {
            match self.get(&word[i..i + 1]) {
                Some(g) => {
                    phones.extend(g.phonemes.iter().cloned());
                    keys.push(word[i..i + 1].to_string());
                    cost += g.cost();
                }
                None => silent.push(c),
            }
        }
        if !silent.is_empty() {
            log::warn!("g2p: no graphone for letters {silent:?} in {word:?}");
        }
        Decoded {
            phonemes: collapse_repeats(phones),
            keys,
            cost,
            fallback: true,
            silent_letters: silent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> GraphoneTable {
        let mut t = GraphoneTable::default();
        t.insert("(abs", &["AE", "B", "S"], 0.56);
        t.insert("olve)", &["AA", "L", "V"], 1.0);
        t.insert("(a", &["AH"], 0.5);
        t.insert("b", &["B"], 0.99);
        t.insert("s", &["S"], 0.8);
        t.insert("o", &["AA"], 0.4);
        t.insert("l", &["L"], 0.99);
        t.insert("v", &["V"], 0.99);
        t.insert("e)", &["IY"], 0.2);
        t.insert("ve)", &["V"], 0.9);
        t.insert("(pa", &["P", "AE"], 0.6);
        t.insert("dd", &["D"], 0.9);
        t.insert("d", &["D"], 0.9);
        t.insert("le)", &["AH", "L"], 0.8);
        t
    }

    #[test]
    fn picks_most_confident_decomposition() {
        let d = table().decode("absolve");
        assert_eq!(d.keys, ["(abs", "olve)"]);
        assert_eq!(d.phonemes, ["AE", "B", "S", "AA", "L", "V"]);
        assert!((d.cost - -(0.56f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn collapses_repeated_phones() {
        let mut t = table();
        t.insert("(pad", &["P", "AE", "D"], 0.6);
        t.insert("dle)", &["D", "AH", "L"], 0.95);
        let d = t.decode("paddle");
        assert_eq!(d.keys, ["(pad", "dle)"]);
        assert_eq!(d.phonemes, ["P", "AE", "D", "AH", "L"]);
    }

    #[test]
    fn tie_prefers_fewer_segments_then_earlier_splits() {
        let mut t = GraphoneTable::default();
        t.insert("(ab", &["A"], 1.0);
        t.insert("c)", &["C"], 1.0);
        t.insert("(a", &["A"], 1.0);
        t.insert("bc)", &["C"], 1.0);
        t.insert("b", &["B"], 1.0);
        assert_eq!(t.decode("abc").keys, ["(a", "bc)"]);
    }

    #[test]
    fn falls_back_letter_by_letter() {
        let mut t = GraphoneTable::default();
        t.insert("q", &["K"], 0.9);
        let d = t.decode("qz");
        assert!(d.fallback);
        assert_eq!(d.phonemes, ["K"]);
        assert_eq!(d.silent_letters, ['z']);
        assert!(t.decode("").phonemes.is_empty());
    }
}
