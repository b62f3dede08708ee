use crate::error::{Error, Result};
use crate::phoneset::Phone;

use super::{
    frame_centre, short_rms, spectral_distance, speech_span, SilenceProfile, Stft, STFT_HOP,
    STFT_WINDOW,
};

const SMOOTHING_FRAMES: usize = 5;
/// Lead-in kept before the first loud stop frame.
const STOP_PREROLL: usize = 48;

/// A clip cut from a recording; `start..end` are source sample indices.
#[derive(Clone, Debug, PartialEq)]
pub struct DiphoneCut {
    pub p1: Phone,
    pub p2: Phone,
    pub start: usize,
    pub end: usize,
    /// Estimated transition instant, in source samples.
    pub boundary: usize,
}

impl DiphoneCut {
    pub fn clip<'a>(&self, source: &'a [f64]) -> &'a [f64] {
        &source[self.start..self.end]
    }
}

/// Centered moving average, shortened at the ends.
pub fn smooth_line(d: &[f64]) -> Vec<f64> {
    let h = SMOOTHING_FRAMES / 2;
    (0..d.len())
        .map(|k| {
            let (lo, hi) = (k.saturating_sub(h), (k + h + 1).min(d.len()));
            d[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}

/// Per-frame closeness to `p2` minus closeness to `p1`, smoothed.
pub fn distance_line(x: &[f64], s1: &[f64], s2: &[f64]) -> Result<Vec<f64>> {
    let frames = Stft::default().frames(x);
    let raw = frames
        .iter()
        .map(|f| Ok(spectral_distance(f, s2)? - spectral_distance(f, s1)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(smooth_line(&raw))
}

fn means(d: &[f64]) -> (f64, f64) {
    let m = d.iter().sum::<f64>() / d.len() as f64;
    let avg = |it: Vec<f64>| {
        if it.is_empty() {
            m
        } else {
            it.iter().sum::<f64>() / it.len() as f64
        }
    };
    let lower = avg(d.iter().copied().filter(|&v| v < m).collect());
    let upper = avg(d.iter().copied().filter(|&v| v > m).collect());
    (lower, upper)
}

/// Frames `(start, lower crossing, upper crossing, end)` of a single rise
/// through the lower and upper means of `d`. The line must sit at or below
/// the lower mean, then at or above the upper mean, each exactly once.
/// Start and end walk outward from the crossings to a local minimum and
/// maximum.
pub fn transition_frames(d: &[f64]) -> Result<(usize, usize, usize, usize)> {
    let ambiguous = || Error::Data("ambiguous transition; re-record".into());
    if d.len() < 2 {
        return Err(ambiguous());
    }
    let (lower, upper) = means(d);
    if !(upper > lower) {
        return Err(ambiguous());
    }
    let mut zones: Vec<(bool, usize, usize)> = Vec::new(); // (upper, first, last)
    for (k, &v) in d.iter().enumerate() {
        let z = if v <= lower {
            false
        } else if v >= upper {
            true
        } else {
            continue;
        };
        match zones.last_mut() {
            Some(last) if last.0 == z => last.2 = k,
            _ => zones.push((z, k, k)),
        }
    }
    let [(false, _, lo), (true, hi, _)] = zones[..] else {
        return Err(ambiguous());
    };
    let mut start = lo;
    while start > 0 && d[start - 1] < d[start] {
        start -= 1;
    }
    let mut end = hi;
    while end + 1 < d.len() && d[end + 1] > d[end] {
        end += 1;
    }
    Ok((start, lo, hi, end))
}

fn span_or_err(x: &[f64], profile: &SilenceProfile, p1: Phone, p2: Phone) -> Result<(usize, usize)> {
    speech_span(x, profile).ok_or_else(|| Error::Data(format!("{p1}-{p2}: no speech detected")))
}

/// Cuts the transition between two persistent phones out of a recording of
/// both held in turn, given their sustain spectra.
pub fn extract_persistent_diphone(
    x: &[f64],
    p1: Phone,
    p2: Phone,
    profile: &SilenceProfile,
    s1: &[f64],
    s2: &[f64],
) -> Result<DiphoneCut> {
    let (a, b) = span_or_err(x, profile, p1, p2)?;
    let d = distance_line(&x[a..b], s1, s2)?;
    let (start, lo, hi, end) =
        transition_frames(&d).map_err(|e| Error::Data(format!("{p1}-{p2}: {e}")))?;
    Ok(DiphoneCut {
        p1,
        p2,
        start: a + frame_centre(start),
        end: (a + frame_centre(end)).min(b),
        boundary: a + (frame_centre(lo) + frame_centre(hi)) / 2,
    })
}

/// Cuts a stop release into `p2`. The clip ends where the line of closeness
/// to `p2` first reaches its upper mean, moved on to a local maximum, and
/// starts after the last quiet frame before that point.
pub fn extract_stop_diphone(
    x: &[f64],
    stop: Phone,
    p2: Phone,
    profile: &SilenceProfile,
    s2: &[f64],
) -> Result<DiphoneCut> {
    let (a, b) = span_or_err(x, profile, stop, p2)?;
    let frames = Stft::default().frames(&x[a..b]);
    let raw = frames
        .iter()
        .map(|f| spectral_distance(f, s2))
        .collect::<Result<Vec<f64>>>()?;
    let mut d = smooth_line(&raw);
    let (min, max) = d
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !(max > min) {
        return Err(Error::Data(format!("{stop}-{p2}: flat distance line; re-record")));
    }
    d.iter_mut().for_each(|v| *v = (*v - min) / (max - min));
    let (_, upper) = means(&d);
    let mut end = d.iter().position(|&v| v >= upper).expect("max reaches the upper mean");
    while end + 1 < d.len() && d[end + 1] > d[end] {
        end += 1;
    }
    let end_sample = (a + frame_centre(end)).min(b);
    let quiet = short_rms(x);
    let start = (0..quiet.len())
        .rev()
        .find(|&k| k * STFT_HOP + STFT_WINDOW <= end_sample && quiet[k] < profile.rms_threshold)
        .map(|k| (k * STFT_HOP + STFT_WINDOW).saturating_sub(STOP_PREROLL))
        .unwrap_or_else(|| {
            log::warn!("{stop}-{p2}: no occlusion silence before the release, cutting from the span start");
            a
        });
    Ok(DiphoneCut {
        p1: stop,
        p2,
        start,
        end: end_sample,
        boundary: end_sample,
    })
}
