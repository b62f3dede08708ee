//! Pronouncing dictionary, part-of-speech lexicon and homograph selectors.

use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::phoneset;
use crate::postagger::Tag;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconEntry {
    /// Uppercase headword.
    pub headword: String,
    /// Raw Arpabet pronunciations with stress digits, variant 0 first.
    pub pronunciations: Vec<Vec<String>>,
    pub homographs: BTreeMap<Tag, usize>,
}

#[derive(Clone, Debug, Default)]
pub struct PronunciationLexicon {
    entries: HashMap<String, LexiconEntry>,
}

/// Splits `word(2)` into (`word`, Some(2)).
fn split_variant(head: &str) -> Option<(&str, Option<u32>)> {
    match head.strip_suffix(')') {
        Some(rest) => {
            let open = rest.rfind('(')?;
            let n = rest[open + 1..].parse().ok()?;
            if open == 0 {
                return None;
            }
            Some((&rest[..open], Some(n)))
        }
        None if head.contains('(') => None,
        None => Some((head, None)),
    }
}

impl PronunciationLexicon {
    /// Parses CMUdict plaintext. Both `WORD(1)` and `word(2)` variant styles
    /// are accepted; variants are ordered by their suffix number, the bare
    /// headword first. `;;;` lines and `#` trailers are comments.
    pub fn load_cmudict<R: BufRead>(reader: R, source_name: &str) -> Result<Self> {
        let mut raw: HashMap<String, Vec<(u32, usize, Vec<String>)>> = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::parse(source_name, lineno, e.to_string()))?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() || body.starts_with(";;;") {
                continue;
            }
            let mut fields = body.split_whitespace();
            let head = fields.next().unwrap_or_default();
            let (word, variant) = split_variant(head).ok_or_else(|| {
                Error::parse(source_name, lineno, format!("malformed headword {head:?}"))
            })?;
            let phones: Vec<String> = fields.map(str::to_string).collect();
            if phones.is_empty() {
                return Err(Error::parse(source_name, lineno, "no phones"));
            }
            if let Some(bad) = phones.iter().find(|p| !phoneset::is_raw_symbol(p)) {
                return Err(Error::parse(
                    source_name,
                    lineno,
                    format!("unknown phone {bad:?}"),
                ));
            }
            let key = word.to_uppercase();
            let order = variant.unwrap_or(0);
            let list = raw.entry(key.clone()).or_default();
            if list.iter().any(|(o, _, _)| *o == order) {
                return Err(Error::parse(
                    source_name,
                    lineno,
                    format!("duplicate entry {head:?}"),
                ));
            }
            list.push((order, lineno, phones));
        }
        let entries = raw
            .into_iter()
            .map(|(key, mut list)| {
                list.sort_by_key(|(o, line, _)| (*o, *line));
                let entry = LexiconEntry {
                    headword: key.clone(),
                    pronunciations: list.into_iter().map(|(_, _, p)| p).collect(),
                    homographs: BTreeMap::new(),
                };
                (key, entry)
            })
            .collect();
        Ok(PronunciationLexicon { entries })
    }

    /// Applies a `word<TAB>tag<TAB>variant` sidecar. Rows naming words absent
    /// from the dictionary or out-of-range variants are errors.
    pub fn load_homographs<R: BufRead>(&mut self, reader: R, source_name: &str) -> Result<usize> {
        let mut n = 0;
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::parse(source_name, lineno, e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::parse(source_name, lineno, "expected 3 columns"));
            }
            let tag = cols[1]
                .chars()
                .next()
                .filter(|_| cols[1].chars().count() == 1)
                .and_then(Tag::from_code)
                .ok_or_else(|| Error::parse(source_name, lineno, format!("bad tag {:?}", cols[1])))?;
            let variant: usize = cols[2]
                .parse()
                .map_err(|_| Error::parse(source_name, lineno, "bad variant index"))?;
            let entry = self
                .entries
                .get_mut(&cols[0].to_uppercase())
                .ok_or_else(|| Error::parse(source_name, lineno, format!("unknown word {:?}", cols[0])))?;
            if variant >= entry.pronunciations.len() {
                return Err(Error::parse(source_name, lineno, "variant out of range"));
            }
            entry.homographs.insert(tag, variant);
            n += 1;
        }
        Ok(n)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, word: &str) -> Option<&LexiconEntry> {
        self.entries.get(&word.to_uppercase())
    }

    /// The homograph variant for `pos` if one is registered, else variant 0.
    pub fn lookup(&self, word: &str, pos: Option<Tag>) -> Option<&[String]> {
        let entry = self.entry(word)?;
        let idx = pos
            .and_then(|t| entry.homographs.get(&t).copied())
            .unwrap_or(0);
        entry.pronunciations.get(idx).map(Vec::as_slice)
    }

    /// Whether `word` has a tag-specific pronunciation for `pos`.
    pub fn homograph_variant(&self, word: &str, pos: Tag) -> Option<&[String]> {
        let entry = self.entry(word)?;
        let idx = *entry.homographs.get(&pos)?;
        entry.pronunciations.get(idx).map(Vec::as_slice)
    }

    /// Entries sorted by headword.
    pub fn iter_sorted(&self) -> Vec<&LexiconEntry> {
        let mut v: Vec<_> = self.entries.values().collect();
        v.sort_by(|a, b| a.headword.cmp(&b.headword));
        v
    }

    /// Writes CMUdict text (`WORD`, `WORD(1)`, ...).
    pub fn to_cmudict(&self) -> String {
        let mut out = String::new();
        for e in self.iter_sorted() {
            for (i, p) in e.pronunciations.iter().enumerate() {
                if i == 0 {
                    out.push_str(&e.headword);
                } else {
                    out.push_str(&format!("{}({})", e.headword, i));
                }
                out.push_str("  ");
                out.push_str(&p.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

const MPOS_DELIM: char = '×';
const MPOS_CODES: &str = "NphVtiAvCP!rDIo";

#[derive(Clone, Debug, Default)]
pub struct PosLexicon {
    /// (headword as written, codes) in load order.
    entries: Vec<(String, String)>,
    index: HashMap<String, usize>,
}

impl PosLexicon {
    pub fn load_mpos<R: BufRead>(reader: R, source_name: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::parse(source_name, lineno, e.to_string()))?;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() {
                continue;
            }
            let (word, codes) = line.split_once(MPOS_DELIM).ok_or_else(|| {
                Error::parse(source_name, lineno, "missing × delimiter")
            })?;
            let mut kept = String::new();
            for c in codes.trim().chars() {
                if !MPOS_CODES.contains(c) {
                    return Err(Error::parse(
                        source_name,
                        lineno,
                        format!("unknown code {c:?}"),
                    ));
                }
                if !kept.contains(c) {
                    kept.push(c);
                }
            }
            entries.push((word.to_string(), kept));
        }
        let mut lex = PosLexicon {
            entries,
            index: HashMap::new(),
        };
        lex.reindex();
        Ok(lex)
    }

    fn reindex(&mut self) {
        self.index.clear();
        for (i, (w, _)) in self.entries.iter().enumerate() {
            self.index.entry(w.to_uppercase()).or_insert(i);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Codes for a word, matched case-insensitively.
    pub fn codes(&self, word: &str) -> Option<&str> {
        self.index
            .get(&word.to_uppercase())
            .map(|&i| self.entries[i].1.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Merges headwords that differ only by case. Identical code sets keep one
    /// entry, a subset is absorbed by its superset, and otherwise the codes
    /// are unioned into the retained entry (the all-lowercase spelling when
    /// present). Returns the number of entries removed.
    pub fn dedup_case_variants(&mut self) -> usize {
        let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, (w, _)) in self.entries.iter().enumerate() {
            groups.entry(w.to_lowercase()).or_default().push(i);
        }
        let mut keep = vec![false; self.entries.len()];
        let mut merged: HashMap<usize, String> = HashMap::new();
        let mut removed = 0;
        for members in groups.values() {
            if members.len() == 1 {
                keep[members[0]] = true;
                continue;
            }
            removed += members.len() - 1;
            let retained = members
                .iter()
                .copied()
                .find(|&i| {
                    let w = &self.entries[i].0;
                    *w == w.to_lowercase()
                })
                .unwrap_or(members[members.len() - 1]);
            let has_all = |sup: &str, sub: &str| sub.chars().all(|c| sup.contains(c));
            let superset = members.iter().copied().find(|&i| {
                members
                    .iter()
                    .all(|&j| has_all(&self.entries[i].1, &self.entries[j].1))
            });
            let codes = match superset {
                Some(s) => self.entries[s].1.clone(),
                None => {
                    let mut codes = self.entries[retained].1.clone();
                    for &j in members {
                        for c in self.entries[j].1.chars() {
                            if !codes.contains(c) {
                                codes.push(c);
                            }
                        }
                    }
                    codes
                }
            };
            keep[retained] = true;
            merged.insert(retained, codes);
        }
        let old = std::mem::take(&mut self.entries);
        self.entries = old
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(i, (w, c))| (w, merged.remove(&i).unwrap_or(c)))
            .collect();
        self.reindex();
        removed
    }
}
