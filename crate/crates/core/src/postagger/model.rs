use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;

use super::tags::{reduce_claws7, Tag};
use crate::error::{Error, Result};

const N: usize = Tag::MODEL.len();

pub type WordTrigram = [String; 3];

/// Tag trigram and bigram counts plus the word-trigram override table.
#[derive(Clone, Debug)]
pub struct TrigramModel {
    trigrams: Vec<u64>,
    bigrams: Vec<u64>,
    overrides: HashMap<WordTrigram, [Tag; 3]>,
    /// Smallest positive trigram count (1 when there is none). Used as the
    /// pseudo-count when a candidate-restricted distribution has a zero.
    tri_unit: u64,
    bi_unit: u64,
}

impl Default for TrigramModel {
    fn default() -> Self {
        TrigramModel {
            trigrams: vec![0; N * N * N],
            bigrams: vec![0; N * N],
            overrides: HashMap::new(),
            tri_unit: 1,
            bi_unit: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub rows: usize,
    pub malformed: usize,
    /// Rows with a tag outside the model set (unknown tags).
    pub unmodelled: usize,
    pub overrides: usize,
}

fn idx3(t: [Tag; 3]) -> Option<usize> {
    Some((t[0].model_index()? * N + t[1].model_index()?) * N + t[2].model_index()?)
}

fn idx2(a: Tag, b: Tag) -> Option<usize> {
    Some(a.model_index()? * N + b.model_index()?)
}

fn parse_tags(s: &str) -> Option<[Tag; 3]> {
    let v: Vec<Tag> = s
        .split_whitespace()
        .map(|c| {
            let mut it = c.chars();
            match (it.next(), it.next()) {
                (Some(ch), None) => Tag::from_code(ch),
                _ => None,
            }
        })
        .collect::<Option<_>>()?;
    v.try_into().ok()
}

fn parse_words(s: &str) -> Option<WordTrigram> {
    let v: Vec<String> = s.split(' ').map(str::to_uppercase).collect();
    if v.iter().any(String::is_empty) {
        return None;
    }
    v.try_into().ok()
}

fn min_positive(v: &[u64]) -> u64 {
    v.iter().copied().filter(|&c| c > 0).min().unwrap_or(1)
}

/// Log-probabilities of `counts` normalized over themselves. If any count is
/// zero, every entry first gets `unit` added.
fn restricted_log_dist(counts: &[u64], unit: u64) -> Vec<f64> {
    let bump = if counts.contains(&0) { unit } else { 0 };
    let total: f64 = counts.iter().map(|&c| (c + bump) as f64).sum();
    counts
        .iter()
        .map(|&c| ((c + bump) as f64 / total).ln())
        .collect()
}

impl TrigramModel {
    /// Builds a model from tag trigram counts; bigrams are the trigram
    /// counts summed over the third tag.
    pub fn from_trigram_counts<I: IntoIterator<Item = ([Tag; 3], u64)>>(counts: I) -> Result<Self> {
        let mut m = TrigramModel::default();
        for (tags, c) in counts {
            let i = idx3(tags).ok_or_else(|| {
                Error::Data(format!("tag trigram {tags:?} is outside the model tag set"))
            })?;
            m.trigrams[i] += c;
        }
        m.finish();
        Ok(m)
    }

    fn finish(&mut self) {
        self.bigrams = vec![0; N * N];
        for ab in 0..N * N {
            self.bigrams[ab] = self.trigrams[ab * N..(ab + 1) * N].iter().sum();
        }
        self.tri_unit = min_positive(&self.trigrams);
        self.bi_unit = min_positive(&self.bigrams);
    }

    /// Reads `frequency<TAB>w1 w2 w3<TAB>claws7 claws7 claws7` rows. Tags are
    /// reduced and counted per tag trigram; word trigrams seen at least
    /// `min_override_count` times become overrides carrying their most
    /// frequent reduced tags.
    pub fn build<R: BufRead>(
        reader: R,
        source_name: &str,
        min_override_count: u64,
    ) -> Result<(Self, BuildReport)> {
        let mut m = TrigramModel::default();
        let mut report = BuildReport::default();
        let mut words: HashMap<WordTrigram, HashMap<[Tag; 3], u64>> = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::parse(source_name, i + 1, e.to_string()))?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            report.rows += 1;
            let cols: Vec<&str> = line.split('\t').collect();
            let parsed = (cols.len() == 3)
                .then(|| {
                    let freq: u64 = cols[0].trim().parse().ok()?;
                    let w = parse_words(cols[1].trim())?;
                    let claws: Vec<&str> = cols[2].split_whitespace().collect();
                    let tags: [Tag; 3] = claws
                        .iter()
                        .map(|t| reduce_claws7(t))
                        .collect::<Vec<_>>()
                        .try_into()
                        .ok()?;
                    Some((freq, w, tags))
                })
                .flatten();
            let Some((freq, w, tags)) = parsed else {
                report.malformed += 1;
                continue;
            };
            let Some(k) = idx3(tags) else {
                report.unmodelled += 1;
                continue;
            };
            m.trigrams[k] += freq;
            *words.entry(w).or_default().entry(tags).or_default() += freq;
        }
        if report.malformed > 0 {
            log::warn!("{source_name}: skipped {} malformed rows", report.malformed);
        }
        for (w, by_tags) in words {
            let total: u64 = by_tags.values().sum();
            if total < min_override_count {
                continue;
            }
            let best = by_tags
                .into_iter()
                .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
                .map(|(t, _)| t)
                .unwrap();
            m.overrides.insert(w, best);
        }
        report.overrides = m.overrides.len();
        m.finish();
        Ok((m, report))
    }

    pub fn trigram(&self, t: [Tag; 3]) -> u64 {
        idx3(t).map_or(0, |i| self.trigrams[i])
    }

    pub fn bigram(&self, a: Tag, b: Tag) -> u64 {
        idx2(a, b).map_or(0, |i| self.bigrams[i])
    }

    /// Pseudo-counts used for trigram and bigram smoothing.
    pub fn smoothing_units(&self) -> (u64, u64) {
        (self.tri_unit, self.bi_unit)
    }

    pub fn override_for(&self, w: &[&str]) -> Option<[Tag; 3]> {
        if w.len() != 3 {
            return None;
        }
        let key: WordTrigram = [w[0].to_uppercase(), w[1].to_uppercase(), w[2].to_uppercase()];
        self.overrides.get(&key).copied()
    }

    pub fn override_count(&self) -> usize {
        self.overrides.len()
    }

    pub fn add_override(&mut self, words: [&str; 3], tags: [Tag; 3]) {
        self.overrides.insert(words.map(str::to_uppercase), tags);
    }

    /// The same model with every count multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        let mut m = self.clone();
        m.trigrams.iter_mut().for_each(|c| *c *= k);
        m.finish();
        m
    }

    /// log P(t3 | t1, t2) for each candidate third tag.
    pub fn transition(&self, t1: Tag, t2: Tag, cands: &[Tag]) -> Vec<f64> {
        let counts: Vec<u64> = cands.iter().map(|&t| self.trigram([t1, t2, t])).collect();
        restricted_log_dist(&counts, self.tri_unit)
    }

    /// log P(a, b) over the candidate pairs, row-major in `first`.
    pub fn initial(&self, first: &[Tag], second: &[Tag]) -> Vec<f64> {
        let counts: Vec<u64> = first
            .iter()
            .flat_map(|&a| second.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.bigram(a, b))
            .collect();
        restricted_log_dist(&counts, self.bi_unit)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "# tag trigram model\n# bigram counts are the trigram counts summed over the third tag\n",
        );
        out.push_str("[trigrams]\n");
        for (i, &c) in self.trigrams.iter().enumerate() {
            if c > 0 {
                let t = [i / (N * N), (i / N) % N, i % N].map(|k| Tag::MODEL[k]);
                let _ = writeln!(out, "{} {} {}\t{c}", t[0], t[1], t[2]);
            }
        }
        out.push_str("[bigrams]\n");
        for (i, &c) in self.bigrams.iter().enumerate() {
            if c > 0 {
                let _ = writeln!(out, "{} {}\t{c}", Tag::MODEL[i / N], Tag::MODEL[i % N]);
            }
        }
        out.push_str("[overrides]\n");
        let mut rows: Vec<_> = self.overrides.iter().collect();
        rows.sort();
        for (w, t) in rows {
            let _ = writeln!(out, "{}\t{} {} {}", w.join(" "), t[0], t[1], t[2]);
        }
        out
    }

    /// Reads the sectioned TSV written by [`TrigramModel::to_tsv`]. The
    /// bigram section must agree with the marginalized trigrams.
    pub fn load_tsv<R: BufRead>(reader: R, source_name: &str) -> Result<Self> {
        let mut m = TrigramModel::default();
        let mut bigrams = vec![0u64; N * N];
        let mut section = "";
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let err = |msg: &str| Error::parse(source_name, lineno, msg);
            let line = line.map_err(|e| Error::parse(source_name, lineno, e.to_string()))?;
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = match name {
                    "trigrams" => "trigrams",
                    "bigrams" => "bigrams",
                    "overrides" => "overrides",
                    _ => return Err(err("unknown section")),
                };
                continue;
            }
            let (key, val) = line.split_once('\t').ok_or_else(|| err("expected two columns"))?;
            match section {
                "trigrams" => {
                    let t = parse_tags(key).ok_or_else(|| err("bad tag trigram"))?;
                    let k = idx3(t).ok_or_else(|| err("tag outside the model set"))?;
                    m.trigrams[k] = val.parse().map_err(|_| err("bad count"))?;
                }
                "bigrams" => {
                    let t: Vec<Tag> = key
                        .split(' ')
                        .map(|c| c.chars().next().and_then(Tag::from_code))
                        .collect::<Option<_>>()
                        .ok_or_else(|| err("bad tag bigram"))?;
                    let k = (t.len() == 2)
                        .then(|| idx2(t[0], t[1]))
                        .flatten()
                        .ok_or_else(|| err("bad tag bigram"))?;
                    bigrams[k] = val.parse().map_err(|_| err("bad count"))?;
                }
                "overrides" => {
                    let w = parse_words(key).ok_or_else(|| err("expected three words"))?;
                    let t = parse_tags(val).ok_or_else(|| err("bad tag trigram"))?;
                    if idx3(t).is_none() {
                        return Err(err("tag outside the model set"));
                    }
                    m.overrides.insert(w, t);
                }
                _ => return Err(err("row before any section")),
            }
        }
        m.finish();
        if m.bigrams != bigrams {
            return Err(Error::Data(format!(
                "{source_name}: bigram section does not match the trigram counts"
            )));
        }
        Ok(m)
    }
}
