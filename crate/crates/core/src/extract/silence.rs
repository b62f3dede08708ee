use crate::audio::rms;
use crate::error::{Error, Result};

use super::STFT_WINDOW;

/// One least-significant bit of 24-bit PCM.
pub const LSB: f64 = 1.0 / 8_388_607.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SilenceProfile {
    pub amplitude_threshold: f64,
    pub rms_threshold: f64,
}

/// Twice the peak and once the RMS of a silent recording, floored at one LSB.
pub fn calibrate_silence(x: &[f64]) -> Result<SilenceProfile> {
    if x.is_empty() {
        return Err(Error::Audio("silence recording is empty".into()));
    }
    let peak = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak >= 1.0 {
        return Err(Error::Audio("silence recording is clipped".into()));
    }
    Ok(SilenceProfile {
        amplitude_threshold: (2.0 * peak).max(LSB),
        rms_threshold: rms(x).max(LSB),
    })
}

/// First and one-past-last samples that exceed the amplitude threshold while
/// the RMS of the surrounding 20 ms exceeds the RMS threshold.
pub fn speech_span(x: &[f64], profile: &SilenceProfile) -> Option<(usize, usize)> {
    let n = x.len();
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + x[i] * x[i];
    }
    let half = STFT_WINDOW / 2;
    let loud = |i: usize| {
        if x[i].abs() <= profile.amplitude_threshold {
            return false;
        }
        let (lo, hi) = (i.saturating_sub(half), (i + half).min(n));
        ((prefix[hi] - prefix[lo]) / (hi - lo) as f64).sqrt() > profile.rms_threshold
    };
    let first = (0..n).find(|&i| loud(i))?;
    let last = (0..n).rev().find(|&i| loud(i))?;
    Some((first, last + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        let p = calibrate_silence(&[0.0; 100]).unwrap();
        assert_eq!(p.amplitude_threshold, LSB);
        assert_eq!(p.rms_threshold, LSB);
        let noise: Vec<f64> = (0..1000).map(|i| if i % 2 == 0 { 0.01 } else { -0.005 }).collect();
        let p = calibrate_silence(&noise).unwrap();
        assert!((p.amplitude_threshold - 0.02).abs() < 1e-15);
        assert!((p.rms_threshold - rms(&noise)).abs() < 1e-15);
        assert!(calibrate_silence(&[]).is_err());
        assert!(calibrate_silence(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn span() {
        let p = SilenceProfile {
            amplitude_threshold: 0.02,
            rms_threshold: 0.05,
        };
        let mut x = vec![0.0; 10_000];
        for v in &mut x[3000..7000] {
            *v = 0.5;
        }
        x[100] = 0.9;
        assert_eq!(speech_span(&x, &p), Some((3000, 7000)));
        assert_eq!(speech_span(&[0.0; 100], &p), None);
    }
}
