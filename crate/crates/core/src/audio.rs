//! Mono PCM buffers and RIFF WAV I/O.

use std::io::{Cursor, Read, Seek, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const SAMPLE_RATE: u32 = 48_000;
pub const BIT_DEPTH: u16 = 24;
const FULL_SCALE_24: f64 = 8_388_607.0;

/// Samples per millisecond at the bank rate.
pub const fn ms(n: usize) -> usize {
    n * SAMPLE_RATE as usize / 1000
}

/// Quantizes to 24-bit integer codes, clipping at full scale.
pub fn to_pcm24(samples: &[f64]) -> Vec<i32> {
    samples
        .iter()
        .map(|&x| (x.clamp(-1.0, 1.0) * FULL_SCALE_24).round() as i32)
        .collect()
}

fn spec() -> hound::WavSpec {
    hound::WavSpec {
        channels: 1,
        sample_rate: SAMPLE_RATE,
        bits_per_sample: BIT_DEPTH,
        sample_format: hound::SampleFormat::Int,
    }
}

fn audio_err(e: hound::Error) -> Error {
    Error::Audio(e.to_string())
}

pub fn write_wav_to<W: Write + Seek>(w: W, samples: &[f64]) -> Result<()> {
    let mut writer = hound::WavWriter::new(w, spec()).map_err(audio_err)?;
    for s in to_pcm24(samples) {
        writer.write_sample(s).map_err(audio_err)?;
    }
    writer.finalize().map_err(audio_err)
}

/// A complete 24-bit mono WAV file in memory.
pub fn wav_bytes(samples: &[f64]) -> Vec<u8> {
    let mut cur = Cursor::new(Vec::new());
    write_wav_to(&mut cur, samples).expect("in-memory WAV write");
    cur.into_inner()
}

pub fn write_wav(path: &Path, samples: &[f64]) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_wav_to(std::io::BufWriter::new(f), samples)
}

/// Reads a mono WAV at the bank rate. Integer PCM of 8 to 32 bits and
/// 32-bit float are accepted and converted to [-1, 1].
pub fn read_wav_from<R: Read>(r: R) -> Result<Vec<f64>> {
    let reader = hound::WavReader::new(r).map_err(audio_err)?;
    let s = reader.spec();
    if s.channels != 1 {
        return Err(Error::Audio(format!("expected mono, got {} channels", s.channels)));
    }
    if s.sample_rate != SAMPLE_RATE {
        return Err(Error::Audio(format!(
            "expected {SAMPLE_RATE} Hz, got {} Hz",
            s.sample_rate
        )));
    }
    match s.sample_format {
        hound::SampleFormat::Float => reader
            .into_samples::<f32>()
            .map(|x| x.map(f64::from).map_err(audio_err))
            .collect(),
        hound::SampleFormat::Int => {
            let scale = ((1i64 << (s.bits_per_sample - 1)) - 1) as f64;
            reader
                .into_samples::<i32>()
                .map(|x| x.map(|v| v as f64 / scale).map_err(audio_err))
                .collect()
        }
    }
}

pub fn read_wav(path: &Path) -> Result<Vec<f64>> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_wav_from(std::io::BufReader::new(f))
}

pub fn rms(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
}

/// Linear gain ramp from `start` to `end` across the buffer.
pub fn apply_ramp(x: &mut [f64], start: f64, end: f64) {
    let n = x.len();
    for (i, v) in x.iter_mut().enumerate() {
        let t = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
        *v *= start + (end - start) * t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact_at_24_bits() {
        let x: Vec<f64> = (0..1000).map(|i| ((i as f64) * 0.01).sin() * 0.8).collect();
        let bytes = wav_bytes(&x);
        let y = read_wav_from(Cursor::new(&bytes)).unwrap();
        assert_eq!(y.len(), x.len());
        assert!(x.iter().zip(&y).all(|(a, b)| (a - b).abs() <= 0.5 / FULL_SCALE_24 + 1e-12));
        assert_eq!(wav_bytes(&y), bytes);
    }

    #[test]
    fn clips_out_of_range() {
        assert_eq!(to_pcm24(&[2.0, -3.0]), [8_388_607, -8_388_607]);
    }

    #[test]
    fn float_input_and_bad_formats() {
        let mut cur = Cursor::new(Vec::new());
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: SAMPLE_RATE,
            bits_per_sample: 32,
            sample_format: hound::SampleFormat::Float,
        };
        let mut w = hound::WavWriter::new(&mut cur, spec).unwrap();
        w.write_sample(0.25f32).unwrap();
        w.finalize().unwrap();
        assert_eq!(read_wav_from(Cursor::new(cur.into_inner())).unwrap(), [0.25]);

        let mut cur = Cursor::new(Vec::new());
        let spec = hound::WavSpec { channels: 2, ..spec };
        hound::WavWriter::new(&mut cur, spec).unwrap().finalize().unwrap();
        assert!(read_wav_from(Cursor::new(cur.into_inner())).is_err());
        assert!(read_wav_from(Cursor::new(b"not a wav".to_vec())).is_err());
    }

    #[test]
    fn empty_buffer_is_a_valid_file() {
        let bytes = wav_bytes(&[]);
        assert!(read_wav_from(Cursor::new(bytes)).unwrap().is_empty());
    }

    #[test]
    fn ramp() {
        let mut x = vec![1.0; 3];
        apply_ramp(&mut x, 1.0, 0.0);
        assert_eq!(x, [1.0, 0.5, 0.0]);
    }
}
