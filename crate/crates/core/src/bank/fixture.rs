//! A deterministic synthetic voice covering every required clip. Sonorants
//! are a 120 Hz harmonic series shaped by two phone-specific formants,
//! obstruents are resonator-filtered noise and stops are decaying bursts.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DiphoneBank;
use crate::audio::ms;
use crate::phoneset::{required_diphone_set, Category, Phone};

pub const FIXTURE_F0: f64 = 120.0;
const PERIOD: usize = 400;
const HARMONICS: usize = 30;
const PEAK: f64 = 0.3;
const NOISE_RMS: f64 = 0.06;
const DIPHONE_LEN: usize = ms(200);
const BURST_LEN: usize = ms(60);
const MONOPHONE_LEN: usize = ms(300);

fn index(p: Phone) -> usize {
    Phone::ALL.iter().position(|&q| q == p).unwrap()
}

fn bump(f: f64, centre: f64) -> f64 {
    (-((f - centre) / 180.0).powi(2)).exp()
}

/// One pitch period of a sonorant, peak-normalized.
fn period_table(p: Phone) -> Vec<f64> {
    let i = index(p);
    let f1 = 300.0 + 70.0 * (i % 7) as f64;
    let f2 = 900.0 + 140.0 * ((i * 5) % 13) as f64;
    let amps: Vec<f64> = (1..=HARMONICS)
        .map(|h| {
            let f = h as f64 * FIXTURE_F0;
            (1.0 + 3.0 * bump(f, f1) + 2.0 * bump(f, f2)) / (h as f64).powf(2.5)
        })
        .collect();
    let table: Vec<f64> = (0..PERIOD)
        .map(|n| {
            amps.iter()
                .enumerate()
                .map(|(k, a)| a * (2.0 * PI * (k + 1) as f64 * n as f64 / PERIOD as f64).cos())
                .sum()
        })
        .collect();
    let peak = table.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    table.iter().map(|v| v * PEAK / peak).collect()
}

/// White noise through a two-pole resonator, RMS-normalized.
fn filtered_noise(seed: u64, centre_hz: f64, len: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: f64 = 0.93;
    let theta = 2.0 * PI * centre_hz / 48_000.0;
    let (a1, a2) = (2.0 * r * theta.cos(), -r * r);
    let (mut y1, mut y2) = (0.0, 0.0);
    let mut out: Vec<f64> = (0..len)
        .map(|_| {
            let y = rng.random_range(-1.0..1.0) + a1 * y1 + a2 * y2;
            y2 = y1;
            y1 = y;
            y
        })
        .collect();
    let rms = (out.iter().map(|v| v * v).sum::<f64>() / len.max(1) as f64).sqrt();
    if rms > 0.0 {
        out.iter_mut().for_each(|v| *v *= NOISE_RMS / rms);
    }
    out
}

fn noise_centre(p: Phone) -> f64 {
    1800.0 + 260.0 * (index(p) % 11) as f64
}

/// The held sound of a persistent phone; silence for X.
pub fn phone_source(p: Phone, len: usize) -> Vec<f64> {
    match p.category() {
        Category::Sonorant => {
            let t = period_table(p);
            (0..len).map(|n| t[n % PERIOD]).collect()
        }
        Category::Obstruent => filtered_noise(index(p) as u64, noise_centre(p), len),
        Category::Silence => vec![0.0; len],
        Category::Stop => panic!("stops have no held sound"),
    }
}

fn burst(p: Phone) -> Vec<f64> {
    let noise = filtered_noise(100 + index(p) as u64, noise_centre(p), BURST_LEN);
    let attack = ms(1);
    let release = ms(5);
    noise
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let env = if n < attack {
                n as f64 / attack as f64
            } else if n + release >= BURST_LEN {
                (BURST_LEN - 1 - n) as f64 / release as f64
            } else {
                (-(n as f64) / ms(15) as f64).exp()
            };
            v * env * 4.0
        })
        .collect()
}

fn raised_cosine(n: usize, from: usize, to: usize) -> f64 {
    if n <= from {
        0.0
    } else if n >= to {
        1.0
    } else {
        0.5 - 0.5 * (PI * (n - from) as f64 / (to - from) as f64).cos()
    }
}

fn diphone(p1: Phone, p2: Phone) -> Vec<f64> {
    let s2 = phone_source(p2, DIPHONE_LEN);
    if p1.is_stop() {
        let b = burst(p1);
        return (0..DIPHONE_LEN)
            .map(|n| {
                let head = b.get(n).copied().unwrap_or(0.0);
                head + s2[n] * raised_cosine(n, BURST_LEN - ms(20), BURST_LEN)
            })
            .collect();
    }
    let s1 = phone_source(p1, DIPHONE_LEN);
    let (from, to) = (DIPHONE_LEN / 4, DIPHONE_LEN * 3 / 4);
    (0..DIPHONE_LEN)
        .map(|n| {
            let w = raised_cosine(n, from, to);
            s1[n] * (1.0 - w) + s2[n] * w
        })
        .collect()
}

fn monophone(p: Phone) -> Vec<f64> {
    if p.is_stop() {
        return burst(p);
    }
    let mut x = phone_source(p, MONOPHONE_LEN);
    let fade = ms(10);
    for n in 0..fade {
        let w = n as f64 / fade as f64;
        x[n] *= w;
        x[MONOPHONE_LEN - 1 - n] *= w;
    }
    x
}

/// Every required diphone plus a monophone for each recordable phone.
pub fn fixture_bank() -> DiphoneBank {
    let mut bank = DiphoneBank::new("fixture");
    for (p1, p2) in required_diphone_set() {
        let clip = diphone(p1, p2);
        let len = clip.len();
        bank.insert_diphone((p1, p2), clip, "synthetic", 0, len);
    }
    for p in crate::phoneset::monophones() {
        let clip = monophone(p);
        let len = clip.len();
        bank.insert_monophone(p, clip, "synthetic", 0, len);
    }
    bank
}
