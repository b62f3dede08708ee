use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;

use super::align::{align_corpus, AlignmentReport};
use super::{AlignedWord, MAX_GRAPHEMES, WORD_END, WORD_START};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Graphone {
    pub phonemes: Vec<String>,
    /// Share of this pronunciation among all pronunciations of the key.
    pub confidence: f64,
}

impl Graphone {
    pub fn cost(&self) -> f64 {
        -self.confidence.ln()
    }
}

/// Costs within this distance count as equal, here and in the decoder.
pub const TIE_EPSILON: f64 = 1e-9;

#[derive(Clone, Debug, Default)]
pub struct GraphoneTable {
    entries: HashMap<String, Graphone>,
}

#[derive(Debug, Default)]
pub struct TrainReport {
    pub alignment: AlignmentReport,
    pub keys: usize,
    pub pruned: usize,
}

fn letter_count(key: &str) -> usize {
    key.chars().filter(|c| *c != WORD_START && *c != WORD_END).count()
}

impl GraphoneTable {
    /// Aligns the dictionary, tallies graphones and prunes redundant keys.
    pub fn train_from_dictionary<S: AsRef<str>>(
        entries: &[(String, Vec<S>)],
    ) -> Result<(Self, TrainReport)> {
        let (aligned, alignment) = align_corpus(entries);
        let mut table = Self::train_unpruned(&aligned)?;
        let keys = table.len();
        let pruned = table.prune();
        log::info!(
            "g2p: {} words, {} zipped, {} estimated, {} dropped; {} keys, {} pruned",
            alignment.words,
            alignment.first_pass,
            alignment.second_pass,
            alignment.dropped,
            keys,
            pruned
        );
        Ok((
            table,
            TrainReport {
                alignment,
                keys,
                pruned,
            },
        ))
    }

    /// Counts every run of segments up to four letters, plus the
    /// boundary-marked variants of runs touching either end of the word,
    /// and keeps the most frequent pronunciation of each key.
    pub fn train_unpruned(aligned: &[AlignedWord]) -> Result<Self> {
        if aligned.is_empty() {
            return Err(Error::Data("cannot train on an empty corpus".into()));
        }
        let mut counts: HashMap<String, HashMap<String, u32>> = HashMap::new();
        let mut bump = |key: String, pron: &str| {
            *counts
                .entry(key)
                .or_default()
                .entry(pron.to_string())
                .or_default() += 1;
        };
        for w in aligned {
            let segs = &w.segments;
            let n = segs.len();
            for i in 0..n {
                let mut g = String::new();
                let mut p = String::new();
                for (j, s) in segs.iter().enumerate().skip(i) {
                    g.push_str(&s.graphemes);
                    if g.len() > MAX_GRAPHEMES {
                        break;
                    }
                    for ph in &s.phonemes {
                        if !p.is_empty() {
                            p.push(' ');
                        }
                        p.push_str(ph);
                    }
                    bump(g.clone(), &p);
                    if i == 0 {
                        bump(format!("{WORD_START}{g}"), &p);
                    }
                    if j == n - 1 {
                        bump(format!("{g}{WORD_END}"), &p);
                    }
                }
            }
        }
        let entries = counts
            .into_iter()
            .map(|(key, prons)| {
                let total: u32 = prons.values().sum();
                let (best, n) = prons
                    .iter()
                    .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
                    .map(|(p, n)| (p.clone(), *n))
                    .unwrap();
                let g = Graphone {
                    phonemes: best.split(' ').map(str::to_string).collect(),
                    confidence: n as f64 / total as f64,
                };
                (key, g)
            })
            .collect();
        Ok(GraphoneTable { entries })
    }

    /// Cheapest split of a multi-letter key into two or more smaller keys.
    fn best_decomposition(&self, key: &str) -> Option<f64> {
        let start = key.starts_with(WORD_START);
        let end = key.ends_with(WORD_END);
        let letters = key.trim_start_matches(WORD_START).trim_end_matches(WORD_END);
        let m = letters.len();
        let mut dp = vec![f64::INFINITY; m + 1];
        dp[0] = 0.0;
        for j in 1..=m {
            for i in 0..j {
                if (i == 0 && j == m) || !dp[i].is_finite() {
                    continue;
                }
                let piece = edge_key(letters, i, j, start && i == 0, end && j == m);
                if let Some(g) = self.entries.get(&piece) {
                    dp[j] = dp[j].min(dp[i] + g.cost());
                }
            }
        }
        dp[m].is_finite().then_some(dp[m])
    }

    /// Removes keys whose best decomposition is strictly more confident.
    /// Decomposition costs are always taken against the unpruned table.
    pub fn prune(&mut self) -> usize {
        let doomed: Vec<String> = self
            .entries
            .iter()
            .filter(|(k, g)| {
                letter_count(k) >= 2
                    && self
                        .best_decomposition(k)
                        .is_some_and(|c| c < g.cost() - TIE_EPSILON)
            })
            .map(|(k, _)| k.clone())
            .collect();
        for k in &doomed {
            self.entries.remove(k);
        }
        doomed.len()
    }

    pub fn get(&self, key: &str) -> Option<&Graphone> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, key: &str, phonemes: &[&str], confidence: f64) {
        self.entries.insert(
            key.to_string(),
            Graphone {
                phonemes: phonemes.iter().map(|s| s.to_string()).collect(),
                confidence,
            },
        );
    }

    /// `graphemes<TAB>phonemes<TAB>confidence`, sorted by graphemes.
    pub fn to_tsv(&self) -> String {
        let mut keys: Vec<&String> = self.entries.keys().collect();
        keys.sort();
        let mut out = String::from("# graphemes\tphonemes\tconfidence\n");
        for k in keys {
            let g = &self.entries[k];
            let _ = writeln!(out, "{}\t{}\t{}", k, g.phonemes.join(" "), g.confidence);
        }
        out
    }

    pub fn load_tsv<R: BufRead>(reader: R, source_name: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::parse(source_name, lineno, e.to_string()))?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::parse(source_name, lineno, "expected 3 columns"));
            }
            let confidence: f64 = cols[2]
                .parse()
                .map_err(|_| Error::parse(source_name, lineno, "bad confidence"))?;
            if !(confidence > 0.0 && confidence <= 1.0) {
                return Err(Error::parse(source_name, lineno, "confidence outside (0,1]"));
            }
            entries.insert(
                cols[0].to_string(),
                Graphone {
                    phonemes: cols[1].split_whitespace().map(str::to_string).collect(),
                    confidence,
                },
            );
        }
        Ok(GraphoneTable { entries })
    }
}

/// Table key for letters `i..j` of `word`, with boundary tokens as asked.
pub(crate) fn edge_key(word: &str, i: usize, j: usize, start: bool, end: bool) -> String {
    let mut k = String::with_capacity(j - i + 2);
    if start {
        k.push(WORD_START);
    }
    k.push_str(&word[i..j]);
    if end {
        k.push(WORD_END);
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2p::Segment;

    fn word(parts: &[(&str, &str)]) -> AlignedWord {
        AlignedWord {
            word: parts.iter().map(|(g, _)| *g).collect(),
            segments: parts
                .iter()
                .map(|(g, p)| Segment::new(g, p.split(' ').map(str::to_string).collect()))
                .collect(),
        }
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(GraphoneTable::train_unpruned(&[]).is_err());
    }

    #[test]
    fn counts_boundary_variants() {
        let corpus = vec![
            word(&[("x", "Z"), ("e", "IY"), ("n", "N")]),
            word(&[("a", "AE"), ("x", "K S")]),
            word(&[("bo", "B AA"), ("x", "K S")]),
            word(&[("x", "Z"), ("a", "AE")]),
        ];
        let t = GraphoneTable::train_unpruned(&corpus).unwrap();
        assert_eq!(t.get("(x").unwrap().phonemes, ["Z"]);
        assert_eq!(t.get("(x").unwrap().confidence, 1.0);
        assert_eq!(t.get("x)").unwrap().phonemes, ["K", "S"]);
        assert_eq!(t.get("x").unwrap().confidence, 0.5);
        // a run spanning a whole word never carries both tokens
        assert!(t.get("(xa)").is_none());
        assert!(t.get("(xa").is_some());
        assert!(t.get("xa)").is_some());
    }

    #[test]
    fn prunes_dominated_keys() {
        let mut t = GraphoneTable::default();
        t.insert("arm", &["AA", "R", "M"], 0.8);
        t.insert("s)", &["Z"], 0.725);
        t.insert("arms)", &["AA", "R", "M", "Z"], 0.47);
        t.insert("arm)", &["AA", "R", "M"], 0.9);
        t.insert("ar", &["AA", "R"], 0.5);
        t.insert("m)", &["M"], 0.95);
        assert_eq!(t.prune(), 1);
        assert!(t.get("arms)").is_none());
        assert!(t.get("arm)").is_some());
    }

    #[test]
    fn tsv_round_trip() {
        let mut t = GraphoneTable::default();
        t.insert("(x", &["Z"], 0.73);
        t.insert("x)", &["K", "S"], 0.9954);
        let again = GraphoneTable::load_tsv(t.to_tsv().as_bytes(), "t").unwrap();
        assert_eq!(again.to_tsv(), t.to_tsv());
        assert!(GraphoneTable::load_tsv("a\tAH\t1.5\n".as_bytes(), "t").is_err());
    }
}
