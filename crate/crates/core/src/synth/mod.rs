//! Text to waveform: preprocessing, prosody planning, diphone sequencing,
//! shifting and concatenation.

mod pronounce;
mod units;

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::audio::SAMPLE_RATE;
use crate::bank::DiphoneBank;
use crate::error::{Error, Result};
use crate::g2p::GraphoneTable;
use crate::lexicon::{PosLexicon, PronunciationLexicon};
use crate::phoneset::Phone;
use crate::postagger::{Tagger, TrigramModel};
use crate::prosody::{plan_sentence, FrequencyTable, PlanWord, ProsodySettings, WordPlan};
use crate::signal::{shift_diphone, smooth_concat};
use crate::textnorm::{is_terminator, TokenKind};

pub use pronounce::{is_silent, phone_string, PronunciationSource, TokenInfo};
pub use units::{to_diphones, PlannedPhone, Sequence, Step, Unit, BRIDGE_SILENCE};

/// Front-end data: dictionary, grapheme-to-phoneme table, tagger and word
/// frequencies.
#[derive(Clone, Debug, Default)]
pub struct Resources {
    pub lexicon: PronunciationLexicon,
    pub g2p: GraphoneTable,
    pub tagger: Tagger,
    pub frequency: FrequencyTable,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

impl Resources {
    /// Loads the shipped layout under `data`: `lexicon/cmudict.dict`,
    /// `lexicon/homographs.tsv`, `lexicon/mpos.txt`, `g2p/graphones.tsv`,
    /// `pos/model.tsv` and `prosody/word_frequency.tsv`.
    pub fn load(data: &Path) -> Result<Self> {
        let p = |rel: &str| data.join(rel);
        let name = |path: &Path| path.display().to_string();
        let cmu = p("lexicon/cmudict.dict");
        let mut lexicon = PronunciationLexicon::load_cmudict(open(&cmu)?, &name(&cmu))?;
        let homo = p("lexicon/homographs.tsv");
        lexicon.load_homographs(open(&homo)?, &name(&homo))?;
        let mpos = p("lexicon/mpos.txt");
        let mut pos_lexicon = PosLexicon::load_mpos(open(&mpos)?, &name(&mpos))?;
        pos_lexicon.dedup_case_variants();
        let g2p_path = p("g2p/graphones.tsv");
        let g2p = GraphoneTable::load_tsv(open(&g2p_path)?, &name(&g2p_path))?;
        let model_path = p("pos/model.tsv");
        let model = TrigramModel::load_tsv(open(&model_path)?, &name(&model_path))?;
        let freq_path = p("prosody/word_frequency.tsv");
        let frequency = FrequencyTable::load(open(&freq_path)?, &name(&freq_path))?;
        Ok(Resources {
            lexicon,
            g2p,
            tagger: Tagger::new(model, pos_lexicon),
            frequency,
        })
    }

    /// Per-phone prosody for preprocessed tokens, as a stream with pauses.
    pub fn plan(&self, tokens: &[TokenInfo], settings: &ProsodySettings) -> (Vec<Unit>, Vec<WordPlan>) {
        let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
        let mut units = Vec::new();
        let mut plans = Vec::new();
        let mut start = 0;
        while start < tokens.len() {
            let sentence = tokens[start].sentence;
            let end = start
                + tokens[start..]
                    .iter()
                    .take_while(|t| t.sentence == sentence)
                    .count();
            let sent = &tokens[start..end];
            let terminator = sent
                .iter()
                .rev()
                .find(|t| t.kind == TokenKind::Punct && is_terminator(&t.text))
                .map_or(".", |t| t.text.as_str());
            let words: Vec<PlanWord> = sent
                .iter()
                .filter(|t| t.kind != TokenKind::Punct)
                .map(|t| PlanWord {
                    text: &t.text,
                    tag: t.tag.unwrap_or(crate::postagger::Tag::Noun),
                    phones: &t.phones,
                })
                .collect();
            let mut word_plans = plan_sentence(&words, terminator, settings, &self.frequency, &mut rng).into_iter();
            for t in sent {
                if t.kind == TokenKind::Punct {
                    if t.pause > 0.0 {
                        units.push(Unit::Pause(t.pause));
                    }
                    continue;
                }
                let wp = word_plans.next().expect("one plan per word");
                units.extend(t.phones.iter().zip(&wp.phones).map(|(p, target)| {
                    Unit::Phone(PlannedPhone {
                        phone: p.phone,
                        target: *target,
                    })
                }));
                plans.push(wp);
            }
            start = end;
        }
        (units, plans)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SynthesisReport {
    pub clips: usize,
    pub substitutions: Vec<String>,
    pub missing_monophones: Vec<Phone>,
    /// Samples of shifted clips before overlap.
    pub clip_samples: usize,
    pub overlap_samples: usize,
    pub silence_samples: usize,
    /// Samples hard-limited to full scale.
    pub clipped_samples: usize,
    pub audio_seconds: f64,
    pub synthesis_seconds: f64,
    pub real_time_factor: f64,
}

pub struct Synthesis {
    pub samples: Vec<f64>,
    pub report: SynthesisReport,
}

/// The plan of an utterance without audio.
#[derive(Clone, Debug, Serialize)]
pub struct Utterance {
    pub tokens: Vec<TokenInfo>,
    pub words: Vec<WordPlan>,
    pub sequence: Sequence,
}

/// A loaded voice and front end.
pub struct Engine {
    pub resources: Resources,
    pub bank: DiphoneBank,
}

impl Engine {
    pub fn new(resources: Resources, bank: DiphoneBank) -> Self {
        Engine { resources, bank }
    }

    pub fn utterance(&self, text: &str, settings: &ProsodySettings) -> Utterance {
        let tokens = self.resources.preprocess(text, settings);
        let (units, words) = self.resources.plan(&tokens, settings);
        let sequence = to_diphones(&units, &self.bank);
        Utterance {
            tokens,
            words,
            sequence,
        }
    }

    /// Shifts and joins the clips of a sequence.
    pub fn render(&self, seq: &Sequence) -> (Vec<f64>, SynthesisReport) {
        let mut out: Vec<f64> = Vec::new();
        let mut report = SynthesisReport {
            substitutions: seq.substitutions.iter().map(|(a, b)| format!("{a}-{b}")).collect(),
            missing_monophones: seq.missing_monophones.clone(),
            ..Default::default()
        };
        let mut prev_end = Phone::X;
        let smoothing = self.bank.smoothing_ms;
        for step in &seq.steps {
            let shifted = match *step {
                Step::Silence { samples } => {
                    out.resize(out.len() + samples, 0.0);
                    report.silence_samples += samples;
                    prev_end = Phone::X;
                    continue;
                }
                Step::Diphone { p1, p2, spec } => {
                    let clip = self.bank.diphone(p1, p2).expect("sequenced clips exist");
                    shift_diphone(clip, p1, p2, &spec, smoothing)
                }
                Step::Monophone { phone, spec } => {
                    let clip = self.bank.monophone(phone).expect("sequenced clips exist");
                    shift_diphone(clip, phone, phone, &spec, smoothing)
                }
            };
            let connective = if step.first_phone() == prev_end { prev_end } else { Phone::X };
            report.clips += 1;
            report.clip_samples += shifted.len();
            report.overlap_samples += smooth_concat(&mut out, &shifted, connective);
            prev_end = step.last_phone();
        }
        for v in &mut out {
            if v.abs() > 1.0 {
                *v = v.clamp(-1.0, 1.0);
                report.clipped_samples += 1;
            }
        }
        if report.clipped_samples > 0 {
            log::warn!("{} samples clipped at full scale", report.clipped_samples);
        }
        report.audio_seconds = out.len() as f64 / SAMPLE_RATE as f64;
        (out, report)
    }

    pub fn synthesize(&self, text: &str, settings: &ProsodySettings) -> Synthesis {
        let started = Instant::now();
        let utt = self.utterance(text, settings);
        let (samples, mut report) = self.render(&utt.sequence);
        report.synthesis_seconds = started.elapsed().as_secs_f64();
        report.real_time_factor = if report.audio_seconds > 0.0 {
            report.synthesis_seconds / report.audio_seconds
        } else {
            0.0
        };
        Synthesis { samples, report }
    }
}
