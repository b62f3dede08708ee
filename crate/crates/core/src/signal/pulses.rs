use crate::audio::SAMPLE_RATE;
use crate::error::{Error, Result};

pub const DEFAULT_SMOOTHING_MS: f64 = 2.0;
/// Peaks below this share of the tallest peak are discarded.
const MIN_RELATIVE_HEIGHT: f64 = 0.2;
/// Trailing peaks farther than this many median gaps from their
/// predecessor are discarded.
const MAX_TRAILING_GAP: f64 = 2.0;

fn moving_average(x: &[f64], width: usize) -> Vec<f64> {
    let n = x.len();
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + x[i];
    }
    let half = width / 2;
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + width - half).min(n);
            (prefix[hi] - prefix[lo]) / (hi - lo) as f64
        })
        .collect()
}

/// Local maxima; a plateau counts once, at its first sample, when the
/// signal falls after it.
fn local_maxima(s: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < s.len() {
        if s[i] > s[i - 1] {
            let mut j = i;
            while j + 1 < s.len() && s[j + 1] == s[i] {
                j += 1;
            }
            if j + 1 < s.len() && s[j + 1] < s[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

fn median(v: &mut [usize]) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

/// Glottal excitation estimates: smooth, clip below zero, pick peaks, drop
/// weak peaks and isolated trailing ones.
pub fn detect_pulses(x: &[f64], smoothing_ms: f64) -> Result<Vec<usize>> {
    let width = ((smoothing_ms * SAMPLE_RATE as f64 / 1000.0).round() as usize).max(1);
    let mut s = moving_average(x, width);
    s.iter_mut().for_each(|v| *v = v.max(0.0));
    let mut peaks: Vec<usize> = local_maxima(&s);
    let top = peaks.iter().map(|&i| s[i]).fold(0.0, f64::max);
    peaks.retain(|&i| s[i] >= MIN_RELATIVE_HEIGHT * top);
    if peaks.is_empty() {
        return Err(Error::Audio("no glottal pulses found (unvoiced or too smooth)".into()));
    }
    if peaks.len() >= 3 {
        let mut gaps: Vec<usize> = peaks.windows(2).map(|w| w[1] - w[0]).collect();
        let limit = MAX_TRAILING_GAP * median(&mut gaps);
        while peaks.len() >= 2 {
            let k = peaks.len();
            if (peaks[k - 1] - peaks[k - 2]) as f64 > limit {
                peaks.pop();
            } else {
                break;
            }
        }
    }
    Ok(peaks)
}
