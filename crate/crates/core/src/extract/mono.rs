use crate::audio::{ms, rms};
use crate::error::{Error, Result};
use crate::phoneset::Phone;

use super::{frame_centre, speech_span, SilenceProfile, STFT_HOP, STFT_WINDOW};

/// Linear fade length at both trim points.
pub const FADE: usize = ms(10);
const MIN_SUSTAIN: usize = ms(500);

/// A trimmed monophone recording split into onset, sustain and offset.
/// Stops keep the whole burst as the sustain.
#[derive(Clone, Debug, PartialEq)]
pub struct MonophoneRecord {
    pub phone: Phone,
    pub clip: Vec<f64>,
    /// Source sample where the clip starts.
    pub source_start: usize,
    pub onset_end: usize,
    pub offset_start: usize,
}

impl MonophoneRecord {
    pub fn onset(&self) -> &[f64] {
        &self.clip[..self.onset_end]
    }

    pub fn sustain(&self) -> &[f64] {
        &self.clip[self.onset_end..self.offset_start]
    }

    pub fn offset(&self) -> &[f64] {
        &self.clip[self.offset_start..]
    }
}

/// RMS of each 20 ms frame on the 10 ms grid; one frame for short input.
pub fn short_rms(x: &[f64]) -> Vec<f64> {
    if x.len() < STFT_WINDOW {
        return vec![rms(x)];
    }
    let count = (x.len() - STFT_WINDOW) / STFT_HOP + 1;
    (0..count)
        .map(|k| rms(&x[k * STFT_HOP..k * STFT_HOP + STFT_WINDOW]))
        .collect()
}

fn fade_edges(x: &mut [f64]) {
    let n = x.len();
    let f = FADE.min(n / 2);
    for i in 0..f {
        let w = i as f64 / f as f64;
        x[i] *= w;
        x[n - 1 - i] *= w;
    }
}

/// Trims a monophone recording to its speech span, fades both ends to zero
/// and splits it where the short-term RMS first rises above and last falls
/// below the RMS of the whole clip.
pub fn section_monophone(x: &[f64], phone: Phone, profile: &SilenceProfile) -> Result<MonophoneRecord> {
    let (a, b) = speech_span(x, profile)
        .ok_or_else(|| Error::Data(format!("{phone}: no speech detected")))?;
    let mut clip = x[a..b].to_vec();
    fade_edges(&mut clip);
    let n = clip.len();
    if phone.is_stop() {
        return Ok(MonophoneRecord {
            phone,
            clip,
            source_start: a,
            onset_end: 0,
            offset_start: n,
        });
    }
    let global = rms(&clip);
    let frames = short_rms(&clip);
    let above: Vec<usize> = (0..frames.len()).filter(|&k| frames[k] > global).collect();
    let (onset_end, offset_start) = match (above.first(), above.last()) {
        (Some(&f), Some(&l)) => (frame_centre(f).min(n), frame_centre(l).min(n)),
        _ => (0, n),
    };
    if offset_start - onset_end < MIN_SUSTAIN {
        log::warn!(
            "{phone}: sustain is {:.3} s, shorter than 0.5 s",
            (offset_start - onset_end) as f64 / 48_000.0
        );
    }
    Ok(MonophoneRecord {
        phone,
        clip,
        source_start: a,
        onset_end,
        offset_start,
    })
}
