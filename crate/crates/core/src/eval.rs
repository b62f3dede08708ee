//! Intelligibility test corpora, prompt generation and transcript scoring.

use std::collections::HashMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{read_to_string, Error, Result};

/// Carrier for single-word prompts.
pub const CARRIER: (&str, &str) = ("Please write down the word", "now.");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Drt,
    Mrt,
    Pb50,
    Harvard,
    Haskins,
}

impl std::str::FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "drt" => CorpusKind::Drt,
            "mrt" => CorpusKind::Mrt,
            "pb50" | "pb-50" => CorpusKind::Pb50,
            "harvard" => CorpusKind::Harvard,
            "haskins" => CorpusKind::Haskins,
            _ => return Err(Error::Usage(format!("unknown test kind {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrtPair {
    pub category: String,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarvardSentence {
    pub text: String,
    pub keywords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MosxQuestion {
    pub question: String,
    pub low: String,
    pub high: String,
}

#[derive(Clone, Debug, Default)]
pub struct Corpora {
    pub drt: Vec<DrtPair>,
    pub mrt: Vec<Vec<String>>,
    pub pb50: Vec<Vec<String>>,
    pub harvard: Vec<Vec<HarvardSentence>>,
    pub haskins: Vec<Vec<String>>,
    pub mosx: Vec<MosxQuestion>,
}

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').collect()))
}

fn expect_count(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Data(format!("{what}: expected {want}, found {got}")));
    }
    Ok(())
}

/// Rows of `group<TAB>item<TAB>text` collected into numbered groups.
fn grouped(text: &str, name: &str, groups: usize, per: usize) -> Result<Vec<Vec<String>>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new(); groups];
    for (line, f) in rows(text) {
        let bad = |m: &str| Error::parse(name, line, m);
        let (g, t) = match f[..] {
            [g, _, t] => (g, t),
            [g, t] => (g, t),
            _ => return Err(bad("wrong column count")),
        };
        let g: usize = g.parse().map_err(|_| bad("bad group number"))?;
        if g == 0 || g > groups {
            return Err(bad("group number out of range"));
        }
        out[g - 1].push(t.trim().to_string());
    }
    for (i, g) in out.iter().enumerate() {
        expect_count(&format!("{name} group {}", i + 1), g.len(), per)?;
    }
    Ok(out)
}

impl Corpora {
    /// Loads every corpus from `dir` and checks its size.
    pub fn load(dir: &Path) -> Result<Self> {
        let read = |f: &str| read_to_string(&dir.join(f));
        let drt_text = read("drt.tsv")?;
        let drt = rows(&drt_text)
            .map(|(line, f)| match f[..] {
                [c, a, b] => Ok(DrtPair {
                    category: c.to_string(),
                    a: a.to_string(),
                    b: b.to_string(),
                }),
                _ => Err(Error::parse("drt.tsv", line, "expected category, word, word")),
            })
            .collect::<Result<Vec<_>>>()?;
        expect_count("drt.tsv pairs", drt.len(), 96)?;

        let mrt_text = read("mrt.tsv")?;
        let mrt: Vec<Vec<String>> = rows(&mrt_text)
            .map(|(_, f)| f.iter().map(|w| w.trim().to_string()).collect())
            .collect();
        expect_count("mrt.tsv sets", mrt.len(), 50)?;
        for (i, set) in mrt.iter().enumerate() {
            expect_count(&format!("mrt.tsv set {}", i + 1), set.len(), 6)?;
        }

        let pb50 = grouped(&read("pb50.tsv")?, "pb50.tsv", 20, 50)?;
        let haskins = grouped(&read("haskins.tsv")?, "haskins.tsv", 4, 50)?;
        let sentences = grouped(&read("harvard.tsv")?, "harvard.tsv", 72, 10)?;
        let keywords = grouped(&read("harvard_keywords.tsv")?, "harvard_keywords.tsv", 72, 10)?;
        let harvard = sentences
            .into_iter()
            .zip(keywords)
            .map(|(s, k)| {
                s.into_iter()
                    .zip(k)
                    .map(|(text, kw)| HarvardSentence {
                        text,
                        keywords: kw.split_whitespace().map(str::to_string).collect(),
                    })
                    .collect()
            })
            .collect();

        let mosx_text = read("mosx.tsv")?;
        let mosx = rows(&mosx_text)
            .map(|(line, f)| match f[..] {
                [_, q, lo, hi] => Ok(MosxQuestion {
                    question: q.to_string(),
                    low: lo.to_string(),
                    high: hi.to_string(),
                }),
                _ => Err(Error::parse("mosx.tsv", line, "expected number, question, anchors")),
            })
            .collect::<Result<Vec<_>>>()?;
        expect_count("mosx.tsv questions", mosx.len(), 15)?;
        Ok(Corpora {
            drt,
            mrt,
            pb50,
            harvard,
            haskins,
            mosx,
        })
    }

    /// Prompts for one test. `list` picks a Harvard list, PB-50 list or
    /// Haskins series (1-based); word tests pick one word per item with the
    /// seeded generator.
    pub fn prompts(&self, kind: CorpusKind, list: Option<usize>, seed: u64) -> Result<Vec<Prompt>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |lists: usize| -> Result<usize> {
            let l = list.unwrap_or(1);
            if l == 0 || l > lists {
                return Err(Error::Usage(format!("list must be 1..={lists}")));
            }
            Ok(l - 1)
        };
        let carrier = |w: &str| format!("{} {w} {}", CARRIER.0, CARRIER.1);
        let prompts = match kind {
            CorpusKind::Drt => self
                .drt
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let w = if rng.random_bool(0.5) { &p.a } else { &p.b };
                    Prompt::new(format!("drt-{:02}", i + 1), w.clone(), vec![w.clone()])
                })
                .collect(),
            CorpusKind::Mrt => self
                .mrt
                .iter()
                .enumerate()
                .map(|(i, set)| {
                    let w = &set[rng.random_range(0..set.len())];
                    Prompt::new(format!("mrt-{:02}", i + 1), carrier(w), vec![w.clone()])
                })
                .collect(),
            CorpusKind::Pb50 => {
                let l = pick(self.pb50.len())?;
                self.pb50[l]
                    .iter()
                    .enumerate()
                    .map(|(i, w)| Prompt::new(format!("pb50-{}-{:02}", l + 1, i + 1), carrier(w), vec![w.clone()]))
                    .collect()
            }
            CorpusKind::Harvard => {
                let l = pick(self.harvard.len())?;
                self.harvard[l]
                    .iter()
                    .enumerate()
                    .map(|(i, s)| Prompt::new(format!("harvard-{}-{:02}", l + 1, i + 1), s.text.clone(), s.keywords.clone()))
                    .collect()
            }
            CorpusKind::Haskins => {
                let l = pick(self.haskins.len())?;
                self.haskins[l]
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let kw = s
                            .split_whitespace()
                            .map(normalize_word)
                            .filter(|w| w != "the")
                            .collect();
                        Prompt::new(format!("haskins-{}-{:02}", l + 1, i + 1), s.clone(), kw)
                    })
                    .collect()
            }
        };
        Ok(prompts)
    }

    /// The rating form, one question per block with its anchors.
    pub fn mosx_form(&self) -> String {
        let mut s = String::from("MOS-X rating form. Circle one number per question.\n\n");
        for (i, q) in self.mosx.iter().enumerate() {
            s.push_str(&format!(
                "{}. {}\n   {}  1  2  3  4  5  6  7  {}\n\n",
                i + 1,
                q.question,
                q.low,
                q.high
            ));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prompt {
    pub id: String,
    pub text: String,
    pub keywords: Vec<String>,
}

impl Prompt {
    fn new(id: String, text: String, keywords: Vec<String>) -> Self {
        Prompt { id, text, keywords }
    }
}

/// `id<TAB>keywords` answer key.
pub fn answer_key(prompts: &[Prompt]) -> String {
    let mut s = String::from("# id\tkeywords\n");
    for p in prompts {
        s.push_str(&format!("{}\t{}\n", p.id, p.keywords.join(" ")));
    }
    s
}

/// Blank transcript sheet for listeners.
pub fn score_sheet(prompts: &[Prompt]) -> String {
    let mut s = String::from("# id\ttranscript\n");
    for p in prompts {
        s.push_str(&format!("{}\t\n", p.id));
    }
    s
}

fn normalize_word(w: &str) -> String {
    w.trim_matches(|c: char| !c.is_alphanumeric() && c != '\'')
        .trim_matches('\'')
        .to_lowercase()
}

/// Keywords found in the transcript, each transcript word used at most once.
pub fn score_transcription<S: AsRef<str>>(keywords: &[S], transcript: &str) -> (usize, usize) {
    let mut heard: HashMap<String, usize> = HashMap::new();
    for w in transcript.split_whitespace() {
        *heard.entry(normalize_word(w)).or_default() += 1;
    }
    let mut correct = 0;
    for k in keywords {
        if let Some(n) = heard.get_mut(&normalize_word(k.as_ref())) {
            if *n > 0 {
                *n -= 1;
                correct += 1;
            }
        }
    }
    (correct, keywords.len())
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScoreSummary {
    pub items: Vec<(String, usize, usize)>,
    pub correct: usize,
    pub total: usize,
    /// Key ids with no transcript; scored as zero.
    pub unanswered: Vec<String>,
}

impl ScoreSummary {
    pub fn percent(&self) -> f64 {
        100.0 * self.correct as f64 / self.total.max(1) as f64
    }
}

fn two_columns(text: &str) -> Vec<(String, String)> {
    rows(text)
        .map(|(_, f)| (f[0].trim().to_string(), f.get(1).map_or("", |s| s.trim()).to_string()))
        .collect()
}

/// Scores an answer key against `id<TAB>transcript` rows.
pub fn score_files(key: &str, transcripts: &str) -> ScoreSummary {
    let hyp: HashMap<String, String> = two_columns(transcripts).into_iter().collect();
    let mut s = ScoreSummary::default();
    for (id, kw) in two_columns(key) {
        let kw: Vec<&str> = kw.split_whitespace().collect();
        let (c, t) = match hyp.get(&id) {
            Some(h) => score_transcription(&kw, h),
            None => {
                s.unanswered.push(id.clone());
                (0, kw.len())
            }
        };
        s.correct += c;
        s.total += t;
        s.items.push((id, c, t));
    }
    s
}
