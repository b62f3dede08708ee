use crate::audio::ms;
use crate::phoneset::Phone;

/// Search span for the alignment maxima at each end of a join.
pub const ALIGN_WINDOW: usize = ms(20);

fn argmax(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if *v > x[best] {
            best = i;
        }
    }
    best
}

/// Appends `next` to `out`. Across a persistent connective phone, the
/// largest sample in the last 20 ms of `out` is lined up with the largest in
/// the first 20 ms of `next` and the overlap is crossfaded linearly. Returns
/// the overlap length.
pub fn smooth_concat(out: &mut Vec<f64>, next: &[f64], connective: Phone) -> usize {
    if connective.is_silence() || connective.is_stop() || out.is_empty() || next.is_empty() {
        out.extend_from_slice(next);
        return 0;
    }
    let len1 = out.len();
    let tail_start = len1 - ALIGN_WINDOW.min(len1);
    let a = tail_start + argmax(&out[tail_start..]);
    let b = argmax(&next[..ALIGN_WINDOW.min(next.len())]);
    let mut overlap = len1 - a + b;
    if overlap > len1 || overlap > next.len() {
        let shrunk = overlap.min(len1).min(next.len());
        log::warn!("concat: overlap {overlap} exceeds a clip, shrinking to {shrunk}");
        overlap = shrunk;
    }
    let base = len1 - overlap;
    for i in 0..overlap {
        let w = (i + 1) as f64 / (overlap + 1) as f64;
        out[base + i] = out[base + i] * (1.0 - w) + next[i] * w;
    }
    out.extend_from_slice(&next[overlap..]);
    overlap
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sine(n: usize, phase: f64) -> Vec<f64> {
        (0..n)
            .map(|i| (2.0 * PI * 150.0 * i as f64 / 48_000.0 + phase).sin())
            .collect()
    }

    #[test]
    fn seam_keeps_the_period() {
        let mut out = sine(4000, 0.0);
        let w2 = sine(4000, 1.3);
        let overlap = smooth_concat(&mut out, &w2, Phone::AA);
        assert_eq!(out.len(), 8000 - overlap);
        let ups: Vec<usize> = (1..out.len())
            .filter(|&i| out[i - 1] < 0.0 && out[i] >= 0.0)
            .collect();
        assert!(ups.windows(2).all(|w| (318..=322).contains(&(w[1] - w[0]))), "{ups:?}");
    }

    #[test]
    fn silence_and_stops_append() {
        let mut out = vec![0.5; 100];
        assert_eq!(smooth_concat(&mut out, &[0.25; 50], Phone::X), 0);
        assert_eq!(out.len(), 150);
        assert_eq!(smooth_concat(&mut out, &[0.25; 50], Phone::T), 0);
        assert_eq!(out.len(), 200);
    }

    #[test]
    fn short_clip_shrinks_the_overlap() {
        let mut out = sine(2000, 0.0);
        let overlap = smooth_concat(&mut out, &[0.0, 1.0, 0.5], Phone::M);
        assert!(overlap <= 3);
        assert_eq!(out.len(), 2003 - overlap);
    }
}
