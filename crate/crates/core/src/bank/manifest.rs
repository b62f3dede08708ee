use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Where a clip was cut from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClipSource {
    pub source: String,
    pub start: usize,
    pub end: usize,
}

/// `key: value` header lines followed by a `[clips]` table of
/// `name<TAB>source<TAB>start<TAB>end` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub name: String,
    pub sample_rate: u32,
    pub bit_depth: u16,
    pub inventory_sha256: String,
    pub pulse_smoothing_ms: f64,
    pub short_rms_window_ms: f64,
    pub stft_window_ms: f64,
    pub stft_hop_ms: f64,
    pub clips: BTreeMap<String, ClipSource>,
}

impl Manifest {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "name: {}\nsample_rate: {}\nbit_depth: {}\ninventory_sha256: {}\n\
             pulse_smoothing_ms: {}\nshort_rms_window_ms: {}\nstft_window_ms: {}\nstft_hop_ms: {}\n\n[clips]\n",
            self.name,
            self.sample_rate,
            self.bit_depth,
            self.inventory_sha256,
            self.pulse_smoothing_ms,
            self.short_rms_window_ms,
            self.stft_window_ms,
            self.stft_hop_ms
        );
        for (name, c) in &self.clips {
            s.push_str(&format!("{name}\t{}\t{}\t{}\n", c.source, c.start, c.end));
        }
        s
    }

    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut keys: BTreeMap<&str, &str> = BTreeMap::new();
        let mut clips = BTreeMap::new();
        let mut in_clips = false;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "[clips]" {
                in_clips = true;
                continue;
            }
            let bad = |m: &str| Error::parse(source_name, i + 1, m);
            if in_clips {
                let f: Vec<&str> = line.split('\t').collect();
                let [name, src, start, end] = f[..] else {
                    return Err(bad("expected name, source, start, end"));
                };
                let num = |v: &str| v.parse::<usize>().map_err(|_| bad("bad sample index"));
                clips.insert(
                    name.to_string(),
                    ClipSource {
                        source: src.to_string(),
                        start: num(start)?,
                        end: num(end)?,
                    },
                );
            } else {
                let (k, v) = line.split_once(':').ok_or_else(|| bad("expected key: value"))?;
                keys.insert(k.trim(), v.trim());
            }
        }
        let get = |k: &str| {
            keys.get(k)
                .copied()
                .ok_or_else(|| Error::Data(format!("{source_name}: missing key {k}")))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| Error::Data(format!("{source_name}: {k} is not a number")))
        };
        let m = Manifest {
            name: get("name")?.to_string(),
            sample_rate: num("sample_rate")? as u32,
            bit_depth: num("bit_depth")? as u16,
            inventory_sha256: get("inventory_sha256")?.to_string(),
            pulse_smoothing_ms: num("pulse_smoothing_ms")?,
            short_rms_window_ms: num("short_rms_window_ms")?,
            stft_window_ms: num("stft_window_ms")?,
            stft_hop_ms: num("stft_hop_ms")?,
            clips,
        };
        if m.sample_rate != crate::audio::SAMPLE_RATE {
            return Err(Error::Data(format!(
                "{source_name}: sample_rate {} is not supported",
                m.sample_rate
            )));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut clips = BTreeMap::new();
        clips.insert(
            "AA-B".to_string(),
            ClipSource {
                source: "take 3.wav".into(),
                start: 5,
                end: 900,
            },
        );
        let m = Manifest {
            name: "v".into(),
            sample_rate: 48_000,
            bit_depth: 24,
            inventory_sha256: "ab".into(),
            pulse_smoothing_ms: 2.5,
            short_rms_window_ms: 20.0,
            stft_window_ms: 20.0,
            stft_hop_ms: 10.0,
            clips,
        };
        assert_eq!(Manifest::parse(&m.to_text(), "m").unwrap(), m);
        assert!(Manifest::parse("name: v\n", "m").is_err());
        assert!(Manifest::parse(&m.to_text().replace("48000", "44100"), "m").is_err());
    }
}
