//! Diphone banks: clips keyed by phone pair plus monophones, stored as a
//! directory of 24-bit WAV files and a text manifest.

mod fixture;
mod manifest;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::audio::{read_wav, write_wav, BIT_DEPTH, SAMPLE_RATE};
use crate::error::{Error, Result};
use crate::extract::{DiphoneCut, MonophoneRecord, STFT_HOP, STFT_WINDOW};
use crate::phoneset::{inventory_text, required_diphone_set, Phone};
use crate::signal::DEFAULT_SMOOTHING_MS;

pub use fixture::{fixture_bank, phone_source, FIXTURE_F0};
pub use manifest::{ClipSource, Manifest};

pub type Pair = (Phone, Phone);

/// SHA-256 of the reference inventory listing, hex encoded.
pub fn inventory_sha256() -> String {
    Sha256::digest(inventory_text().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct DiphoneBank {
    pub name: String,
    pub smoothing_ms: f64,
    pub diphones: BTreeMap<Pair, Vec<f64>>,
    /// Sustained persistent phones and stop bursts.
    pub monophones: BTreeMap<Phone, Vec<f64>>,
    pub provenance: BTreeMap<String, ClipSource>,
}

/// Required clips a bank lacks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    pub missing_diphones: Vec<Pair>,
    pub missing_stop_monophones: Vec<Phone>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.missing_diphones.is_empty() && self.missing_stop_monophones.is_empty()
    }
}

fn clip_name(p: Pair) -> String {
    format!("{}-{}", p.0, p.1)
}

fn parse_clip_name(stem: &str) -> Option<(Phone, Option<Phone>)> {
    match stem.split_once('-') {
        Some((a, b)) => Some((a.parse().ok()?, Some(b.parse().ok()?))),
        None => Some((stem.parse().ok()?, None)),
    }
}

impl DiphoneBank {
    pub fn new(name: &str) -> Self {
        DiphoneBank {
            name: name.to_string(),
            smoothing_ms: DEFAULT_SMOOTHING_MS,
            ..Default::default()
        }
    }

    pub fn diphone(&self, p1: Phone, p2: Phone) -> Option<&[f64]> {
        self.diphones.get(&(p1, p2)).map(Vec::as_slice)
    }

    pub fn monophone(&self, p: Phone) -> Option<&[f64]> {
        self.monophones.get(&p).map(Vec::as_slice)
    }

    pub fn completeness(&self) -> CompletenessReport {
        let missing_diphones = required_diphone_set()
            .into_iter()
            .filter(|p| !self.diphones.contains_key(p))
            .collect();
        let missing_stop_monophones = Phone::ALL
            .iter()
            .copied()
            .filter(|p| p.is_stop() && !self.monophones.contains_key(p))
            .collect();
        CompletenessReport {
            missing_diphones,
            missing_stop_monophones,
        }
    }

    /// Builds a bank from sectioned monophones and extracted diphone cuts
    /// with their source recordings. Silence-adjacent diphones come from the
    /// monophone onsets and offsets.
    pub fn assemble(
        name: &str,
        monophones: &[(String, MonophoneRecord)],
        cuts: &[(String, DiphoneCut, &[f64])],
    ) -> (Self, CompletenessReport) {
        let mut bank = DiphoneBank::new(name);
        for (source, rec) in monophones {
            let p = rec.phone;
            let at = |off: usize| rec.source_start + off;
            if p.is_stop() {
                bank.insert_monophone(p, rec.clip.clone(), source, at(0), at(rec.clip.len()));
                continue;
            }
            bank.insert_monophone(p, rec.sustain().to_vec(), source, at(rec.onset_end), at(rec.offset_start));
            bank.insert_diphone((Phone::X, p), rec.onset().to_vec(), source, at(0), at(rec.onset_end));
            bank.insert_diphone(
                (p, Phone::X),
                rec.offset().to_vec(),
                source,
                at(rec.offset_start),
                at(rec.clip.len()),
            );
        }
        for (source, cut, x) in cuts {
            bank.insert_diphone((cut.p1, cut.p2), cut.clip(x).to_vec(), source, cut.start, cut.end);
        }
        let report = bank.completeness();
        (bank, report)
    }

    fn record(&mut self, name: String, source: &str, start: usize, end: usize) {
        self.provenance.insert(
            name,
            ClipSource {
                source: source.to_string(),
                start,
                end,
            },
        );
    }

    pub fn insert_diphone(&mut self, p: Pair, clip: Vec<f64>, source: &str, start: usize, end: usize) {
        self.record(clip_name(p), source, start, end);
        self.diphones.insert(p, clip);
    }

    pub fn insert_monophone(&mut self, p: Phone, clip: Vec<f64>, source: &str, start: usize, end: usize) {
        self.record(p.to_string(), source, start, end);
        self.monophones.insert(p, clip);
    }

    pub fn manifest(&self) -> Manifest {
        Manifest {
            name: self.name.clone(),
            sample_rate: SAMPLE_RATE,
            bit_depth: BIT_DEPTH,
            inventory_sha256: inventory_sha256(),
            pulse_smoothing_ms: self.smoothing_ms,
            short_rms_window_ms: (STFT_WINDOW * 1000 / SAMPLE_RATE as usize) as f64,
            stft_window_ms: (STFT_WINDOW * 1000 / SAMPLE_RATE as usize) as f64,
            stft_hop_ms: (STFT_HOP * 1000 / SAMPLE_RATE as usize) as f64,
            clips: self.provenance.clone(),
        }
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (&p, clip) in &self.diphones {
            write_wav(&dir.join(format!("{}.wav", clip_name(p))), clip)?;
        }
        for (&p, clip) in &self.monophones {
            write_wav(&dir.join(format!("{p}.wav")), clip)?;
        }
        let path = dir.join("manifest.txt");
        std::fs::write(&path, self.manifest().to_text()).map_err(|e| Error::io(&path, e))
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join("manifest.txt");
        let text = crate::error::read_to_string(&path)?;
        let manifest = Manifest::parse(&text, &path.display().to_string())?;
        if manifest.inventory_sha256 != inventory_sha256() {
            return Err(Error::Data(format!(
                "{}: bank was built for a different phone inventory",
                dir.display()
            )));
        }
        let mut bank = DiphoneBank::new(&manifest.name);
        bank.smoothing_ms = manifest.pulse_smoothing_ms;
        bank.provenance = manifest.clips;
        let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
        let mut names = BTreeSet::new();
        for entry in entries {
            let entry = entry.map_err(|e| Error::io(dir, e))?;
            names.insert(entry.path());
        }
        for file in names {
            if file.extension().and_then(|e| e.to_str()) != Some("wav") {
                continue;
            }
            let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            let Some((p1, p2)) = parse_clip_name(stem) else {
                log::warn!("bank: ignoring {}", file.display());
                continue;
            };
            let clip = read_wav(&file)?;
            match p2 {
                Some(p2) => bank.diphones.insert((p1, p2), clip),
                None => bank.monophones.insert(p1, clip),
            };
        }
        Ok(bank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lists_missing_pairs() {
        let mut bank = DiphoneBank::new("t");
        for p in required_diphone_set() {
            bank.diphones.insert(p, vec![0.0]);
        }
        for p in Phone::ALL.iter().filter(|p| p.is_stop()) {
            bank.monophones.insert(*p, vec![0.0]);
        }
        assert!(bank.completeness().is_complete());
        assert!(bank.diphone(Phone::T, Phone::P).is_none());
        bank.diphones.remove(&(Phone::L, Phone::N));
        bank.monophones.remove(&Phone::K);
        let r = bank.completeness();
        assert_eq!(r.missing_diphones, [(Phone::L, Phone::N)]);
        assert_eq!(r.missing_stop_monophones, [Phone::K]);
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let mut bank = DiphoneBank::new("tiny");
        bank.insert_diphone((Phone::X, Phone::AA), vec![0.0, 0.25, -0.5], "aa.wav", 10, 13);
        bank.insert_monophone(Phone::T, vec![0.0, 0.125], "t.wav", 0, 2);
        bank.save(dir.path()).unwrap();
        let back = DiphoneBank::load(dir.path()).unwrap();
        assert_eq!(back.name, "tiny");
        assert_eq!(back.diphone(Phone::X, Phone::AA).unwrap().len(), 3);
        assert!((back.monophone(Phone::T).unwrap()[1] - 0.125).abs() < 1e-6);
        assert_eq!(back.provenance, bank.provenance);
    }

    #[test]
    fn clip_names() {
        assert_eq!(parse_clip_name("IPAA-IH"), Some((Phone::IPAA, Some(Phone::IH))));
        assert_eq!(parse_clip_name("T"), Some((Phone::T, None)));
        assert_eq!(parse_clip_name("Q-R"), None);
    }
}
