//! Letter/phone co-segmentation of dictionary entries.

use std::collections::HashMap;

use super::{AlignedWord, Segment, MAX_GRAPHEMES};

const VOWEL_LETTERS: &str = "aeiouwyr";
const VOWEL_PHONES: [&str; 18] = [
    "AA", "AE", "AH", "AO", "EH", "ER", "IH", "IY", "UH", "UW", "AW", "AY", "EY", "OW", "OY", "W",
    "Y", "R",
];

fn is_vowel_phone(p: &str) -> bool {
    VOWEL_PHONES.contains(&p)
}

fn letter_runs(word: &str) -> Vec<&str> {
    let mut runs = Vec::new();
    let mut start = 0;
    let bytes = word.as_bytes();
    for i in 1..=bytes.len() {
        let boundary = i == bytes.len()
            || VOWEL_LETTERS.contains(bytes[i] as char)
                != VOWEL_LETTERS.contains(bytes[i - 1] as char);
        if boundary {
            runs.push(&word[start..i]);
            start = i;
        }
    }
    runs
}

fn phone_runs<S: AsRef<str>>(phones: &[S]) -> Vec<Vec<String>> {
    let mut runs: Vec<Vec<String>> = Vec::new();
    let mut prev: Option<bool> = None;
    for p in phones {
        let p = p.as_ref();
        let v = is_vowel_phone(p);
        if prev == Some(v) {
            runs.last_mut().unwrap().push(p.to_string());
        } else {
            runs.push(vec![p.to_string()]);
        }
        prev = Some(v);
    }
    runs
}

/// First-pass alignment: zip the vowel/consonant runs of the spelling with
/// those of the pronunciation when the run counts agree.
pub fn initial_align<S: AsRef<str>>(word: &str, phones: &[S]) -> Option<AlignedWord> {
    if word.is_empty() || phones.is_empty() || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    let letters = letter_runs(word);
    let sounds = phone_runs(phones);
    if letters.len() != sounds.len() {
        return None;
    }
    let segments = letters
        .into_iter()
        .zip(sounds)
        .map(|(g, p)| Segment {
            graphemes: g.to_string(),
            phonemes: p,
        })
        .collect();
    Some(AlignedWord {
        word: word.to_string(),
        segments,
    })
}

/// Pronunciations observed for each grapheme cluster of at most four letters,
/// most frequent first, with rare ones removed.
#[derive(Debug, Default)]
pub struct ClusterPronunciations {
    known: HashMap<String, Vec<Vec<String>>>,
}

/// A pronunciation seen less than this fraction as often as the most common
/// one for its cluster is discarded.
const MIN_RELATIVE_FREQUENCY: f64 = 0.1;

impl ClusterPronunciations {
    pub fn from_aligned(words: &[AlignedWord]) -> Self {
        let mut counts: HashMap<String, HashMap<Vec<String>, u32>> = HashMap::new();
        for w in words {
            let segs = &w.segments;
            for i in 0..segs.len() {
                let mut g = String::new();
                let mut p: Vec<String> = Vec::new();
                for s in &segs[i..] {
                    g.push_str(&s.graphemes);
                    if g.len() > MAX_GRAPHEMES {
                        break;
                    }
                    p.extend(s.phonemes.iter().cloned());
                    *counts.entry(g.clone()).or_default().entry(p.clone()).or_default() += 1;
                }
            }
        }
        let known = counts
            .into_iter()
            .map(|(g, prons)| {
                let max = prons.values().copied().max().unwrap_or(0) as f64;
                let mut kept: Vec<(Vec<String>, u32)> = prons
                    .into_iter()
                    .filter(|(_, n)| *n as f64 >= MIN_RELATIVE_FREQUENCY * max)
                    .collect();
                kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
                (g, kept.into_iter().map(|(p, _)| p).collect())
            })
            .collect();
        ClusterPronunciations { known }
    }

    pub fn get(&self, graphemes: &str) -> Option<&[Vec<String>]> {
        self.known.get(graphemes).map(Vec::as_slice)
    }

    /// Splits a segment into smaller ones until every piece has one letter
    /// or one phone, or no known pronunciation permits a further split.
    pub fn refine(&self, seg: Segment) -> Vec<Segment> {
        let mut out = Vec::new();
        self.refine_into(seg, &mut out);
        out
    }

    fn refine_into(&self, seg: Segment, out: &mut Vec<Segment>) {
        if seg.graphemes.len() <= 1 || seg.phonemes.len() <= 1 {
            out.push(seg);
            return;
        }
        match self.split_end(&seg).or_else(|| self.split_start(&seg)) {
            Some((left, right)) => {
                self.refine_into(left, out);
                self.refine_into(right, out);
            }
            None => out.push(seg),
        }
    }

    fn split_end(&self, seg: &Segment) -> Option<(Segment, Segment)> {
        let g = &seg.graphemes;
        let p = &seg.phonemes;
        let longest = (g.len() - 1).min(MAX_GRAPHEMES);
        for k in (1..=longest).rev() {
            let cut = g.len() - k;
            let Some(prons) = self.get(&g[cut..]) else {
                continue;
            };
            if let Some(q) = prons.iter().find(|q| q.len() < p.len() && p.ends_with(q)) {
                let pcut = p.len() - q.len();
                return Some((
                    Segment::new(&g[..cut], p[..pcut].to_vec()),
                    Segment::new(&g[cut..], q.clone()),
                ));
            }
        }
        None
    }

    fn split_start(&self, seg: &Segment) -> Option<(Segment, Segment)> {
        let g = &seg.graphemes;
        let p = &seg.phonemes;
        let longest = (g.len() - 1).min(MAX_GRAPHEMES);
        for k in (1..=longest).rev() {
            let Some(prons) = self.get(&g[..k]) else {
                continue;
            };
            if let Some(q) = prons.iter().find(|q| q.len() < p.len() && p.starts_with(q)) {
                return Some((
                    Segment::new(&g[..k], q.clone()),
                    Segment::new(&g[k..], p[q.len()..].to_vec()),
                ));
            }
        }
        None
    }
}

/// Outcome of aligning a whole dictionary.
#[derive(Debug, Default)]
pub struct AlignmentReport {
    pub words: usize,
    pub first_pass: usize,
    pub second_pass: usize,
    pub dropped: usize,
}

/// Two-pass alignment: run-zipping, then minimal co-segmentation of the
/// zipped words and estimated segmentations for the rest. Words that still
/// contain a segment longer than four letters are dropped.
pub fn align_corpus<S: AsRef<str>>(
    entries: &[(String, Vec<S>)],
) -> (Vec<AlignedWord>, AlignmentReport) {
    let mut report = AlignmentReport {
        words: entries.len(),
        ..Default::default()
    };
    let mut first = Vec::new();
    let mut failed = Vec::new();
    for (word, phones) in entries {
        match initial_align(word, phones) {
            Some(a) => first.push(a),
            None => failed.push((word.clone(), phones)),
        }
    }
    report.first_pass = first.len();
    let clusters = ClusterPronunciations::from_aligned(&first);
    let fits = |w: &AlignedWord| w.segments.iter().all(|s| s.graphemes.len() <= MAX_GRAPHEMES);
    let mut out = Vec::with_capacity(entries.len());
    for w in first {
        let segments = w
            .segments
            .into_iter()
            .flat_map(|s| clusters.refine(s))
            .collect();
        let refined = AlignedWord {
            word: w.word,
            segments,
        };
        if fits(&refined) {
            out.push(refined);
        } else {
            report.dropped += 1;
        }
    }
    for (word, phones) in failed {
        if word.is_empty() || phones.is_empty() {
            report.dropped += 1;
            continue;
        }
        let whole = Segment::new(&word, phones.iter().map(|p| p.as_ref().to_string()).collect());
        let refined = AlignedWord {
            word,
            segments: clusters.refine(whole),
        };
        if fits(&refined) {
            report.second_pass += 1;
            out.push(refined);
        } else {
            report.dropped += 1;
        }
    }
    (out, report)
}
