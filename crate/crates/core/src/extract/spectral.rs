use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::audio::ms;
use crate::error::{Error, Result};

pub const STFT_WINDOW: usize = ms(20);
pub const STFT_HOP: usize = ms(10);
/// Floor added to both spectra before taking ratios.
const SPECTRAL_FLOOR: f64 = 0.1;

/// Hann-windowed magnitude STFT with a fixed 20 ms / 10 ms grid.
pub struct Stft {
    fft: Arc<dyn Fft<f64>>,
    window: Vec<f64>,
}

impl Default for Stft {
    fn default() -> Self {
        let fft = FftPlanner::new().plan_fft_forward(STFT_WINDOW);
        let window = (0..STFT_WINDOW)
            .map(|i| {
                0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / STFT_WINDOW as f64).cos()
            })
            .collect();
        Stft { fft, window }
    }
}

/// Centre sample of frame `k`.
pub fn frame_centre(k: usize) -> usize {
    k * STFT_HOP + STFT_WINDOW / 2
}

impl Stft {
    pub fn bins() -> usize {
        STFT_WINDOW / 2 + 1
    }

    /// Magnitudes of one frame starting at `start`; samples past the end
    /// are zero.
    pub fn frame(&self, x: &[f64], start: usize) -> Vec<f64> {
        let mut buf: Vec<Complex<f64>> = (0..STFT_WINDOW)
            .map(|i| Complex::new(x.get(start + i).copied().unwrap_or(0.0) * self.window[i], 0.0))
            .collect();
        self.fft.process(&mut buf);
        buf[..Self::bins()].iter().map(|c| c.norm()).collect()
    }

    /// Frames fully inside `x`, or one zero-padded frame for a short input.
    pub fn frames(&self, x: &[f64]) -> Vec<Vec<f64>> {
        if x.len() < STFT_WINDOW {
            return vec![self.frame(x, 0)];
        }
        let count = (x.len() - STFT_WINDOW) / STFT_HOP + 1;
        (0..count).map(|k| self.frame(x, k * STFT_HOP)).collect()
    }
}

/// Average magnitude spectrum of a sustained phone.
pub fn spectral_profile(x: &[f64]) -> Vec<f64> {
    let frames = Stft::default().frames(x);
    let mut acc = vec![0.0; Stft::bins()];
    for f in &frames {
        for (a, v) in acc.iter_mut().zip(f) {
            *a += v;
        }
    }
    acc.iter_mut().for_each(|a| *a /= frames.len() as f64);
    acc
}

/// Closeness of two spectra: 0 when equal, increasingly negative apart.
pub fn spectral_distance(s1: &[f64], s2: &[f64]) -> Result<f64> {
    if s1.len() != s2.len() {
        return Err(Error::Data(format!(
            "spectra differ in length: {} vs {}",
            s1.len(),
            s2.len()
        )));
    }
    let d: f64 = s1
        .iter()
        .zip(s2)
        .map(|(a, b)| {
            let (p1, p2) = (a + SPECTRAL_FLOOR, b + SPECTRAL_FLOOR);
            p1.max(p2) / p1.min(p2) - 1.0
        })
        .sum();
    Ok((1.0 / (d + 1.0)).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(spectral_distance(&[0.3, 2.0], &[0.3, 2.0]).unwrap(), 0.0);
        let d = spectral_distance(&[0.9], &[0.1]).unwrap();
        assert!((d - (0.2f64).ln()).abs() < 1e-12);
        assert_eq!(d, spectral_distance(&[0.1], &[0.9]).unwrap());
        assert!(spectral_distance(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn tone_peaks_in_its_bin() {
        let x: Vec<f64> = (0..4800)
            .map(|i| (2.0 * std::f64::consts::PI * 500.0 * i as f64 / 48_000.0).sin())
            .collect();
        let p = spectral_profile(&x);
        assert_eq!(p.len(), 481);
        let peak = (0..p.len()).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap();
        assert_eq!(peak, 10);
        assert_eq!(Stft::default().frames(&x).len(), 9);
        assert_eq!(Stft::default().frames(&x[..100]).len(), 1);
    }
}
