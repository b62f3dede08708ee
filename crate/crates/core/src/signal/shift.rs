use super::{detect_pulses, psola_core, usds_core, ShiftSpec};
use crate::audio::apply_ramp;
use crate::phoneset::{Category, Phone};

/// How a clip between two phones is shifted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftPath {
    Psola,
    Usds,
    /// Voiced head through PSOLA, unvoiced tail through USDS.
    VoicedToUnvoiced,
    /// The reverse, handled by time reversal.
    UnvoicedToVoiced,
}

fn voiced(p: Phone) -> bool {
    p.category() == Category::Sonorant
}

impl ShiftPath {
    /// A stop takes the voicing of the phone it releases into.
    pub fn for_pair(p1: Phone, p2: Phone) -> Self {
        let v1 = if p1.is_stop() { voiced(p2) } else { voiced(p1) };
        match (v1, voiced(p2)) {
            (true, true) => ShiftPath::Psola,
            (false, false) => ShiftPath::Usds,
            (true, false) => ShiftPath::VoicedToUnvoiced,
            (false, true) => ShiftPath::UnvoicedToVoiced,
        }
    }
}

/// Where a voiced-to-unvoiced clip is cut: one pulse gap past the last pulse.
pub fn split_point(pulses: &[usize], len: usize) -> Option<usize> {
    let k = pulses.len();
    if k < 2 {
        return None;
    }
    let at = pulses[k - 1] + (pulses[k - 1] - pulses[k - 2]);
    (at < len).then_some(at)
}

fn psola_or_usds(x: &[f64], spec: &ShiftSpec, smoothing_ms: f64) -> Vec<f64> {
    match detect_pulses(x, smoothing_ms) {
        Ok(p) if p.len() >= 2 => psola_core(x, &p, spec),
        _ => {
            log::warn!("shift: no usable pulses in a voiced clip, using frame repetition");
            usds_core(x, spec)
        }
    }
}

fn voiced_to_unvoiced(x: &[f64], spec: &ShiftSpec, smoothing_ms: f64) -> Vec<f64> {
    let pulses = match detect_pulses(x, smoothing_ms) {
        Ok(p) => p,
        Err(_) => return usds_core(x, spec),
    };
    let Some(cut) = split_point(&pulses, x.len()) else {
        return psola_or_usds(x, spec, smoothing_ms);
    };
    let t = cut as f64 / x.len() as f64;
    let mut out = psola_core(&x[..cut], &pulses, &spec.slice(0.0, t));
    out.extend(usds_core(&x[cut..], &spec.slice(t, 1.0)));
    out
}

/// Pitch, duration and volume shifting of one diphone clip, choosing the
/// method from the voicing of its two phones.
pub fn shift_diphone(x: &[f64], p1: Phone, p2: Phone, spec: &ShiftSpec, smoothing_ms: f64) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let mut out = if spec.pitch == (1.0, 1.0) && spec.duration == (1.0, 1.0) {
        x.to_vec()
    } else {
        match ShiftPath::for_pair(p1, p2) {
            ShiftPath::Psola => psola_or_usds(x, spec, smoothing_ms),
            ShiftPath::Usds => usds_core(x, spec),
            ShiftPath::VoicedToUnvoiced => voiced_to_unvoiced(x, spec, smoothing_ms),
            ShiftPath::UnvoicedToVoiced => {
                let rev: Vec<f64> = x.iter().rev().copied().collect();
                let mut y = voiced_to_unvoiced(&rev, &spec.reversed(), smoothing_ms);
                y.reverse();
                y
            }
        }
    };
    apply_ramp(&mut out, spec.volume.0, spec.volume.1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn paths() {
        assert_eq!(ShiftPath::for_pair(Phone::Y, Phone::EH), ShiftPath::Psola);
        assert_eq!(ShiftPath::for_pair(Phone::HH, Phone::SH), ShiftPath::Usds);
        assert_eq!(ShiftPath::for_pair(Phone::Y, Phone::F), ShiftPath::VoicedToUnvoiced);
        assert_eq!(ShiftPath::for_pair(Phone::F, Phone::Y), ShiftPath::UnvoicedToVoiced);
        assert_eq!(ShiftPath::for_pair(Phone::G, Phone::R), ShiftPath::Psola);
        assert_eq!(ShiftPath::for_pair(Phone::T, Phone::S), ShiftPath::Usds);
        assert_eq!(ShiftPath::for_pair(Phone::X, Phone::AA), ShiftPath::UnvoicedToVoiced);
        assert_eq!(ShiftPath::for_pair(Phone::S, Phone::X), ShiftPath::Usds);
    }

    #[test]
    fn split_is_one_gap_past_the_last_pulse() {
        assert_eq!(split_point(&[100, 580, 1060], 2000), Some(1540));
        assert_eq!(split_point(&[100, 580, 1060], 1500), None);
        assert_eq!(split_point(&[100], 1500), None);
    }

    /// 100 Hz voicing for 0.3 s followed by 0.2 s of hiss.
    fn voiced_then_noise() -> Vec<f64> {
        let mut x: Vec<f64> = (0..14_400)
            .map(|i| (2.0 * PI * 100.0 * i as f64 / 48_000.0).sin() * 0.5)
            .collect();
        x.extend((0..9_600).map(|i| (((i * 7919) % 211) as f64 / 211.0 - 0.5) * 0.02));
        x
    }

    #[test]
    fn mixed_clip_keeps_its_unvoiced_tail_length_under_pitch_shift() {
        let x = voiced_then_noise();
        let y = shift_diphone(&x, Phone::Y, Phone::F, &ShiftSpec::constant(1.5, 1.0, 1.0), 2.0);
        assert!((y.len() as i64 - x.len() as i64).abs() <= 480, "{}", y.len());
    }

    #[test]
    fn reversal_symmetry() {
        let x = voiced_then_noise();
        let spec = ShiftSpec {
            pitch: (1.2, 0.9),
            duration: (1.5, 0.8),
            volume: (1.0, 0.7),
        };
        let fwd = shift_diphone(&x, Phone::Y, Phone::F, &spec, 2.0);
        let rev_in: Vec<f64> = x.iter().rev().copied().collect();
        let mut back = shift_diphone(&rev_in, Phone::F, Phone::Y, &spec.reversed(), 2.0);
        back.reverse();
        assert_eq!(fwd.len(), back.len());
        let worst = fwd.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn identity_spec_passes_through() {
        let x = voiced_then_noise();
        assert_eq!(shift_diphone(&x, Phone::Y, Phone::F, &ShiftSpec::default(), 2.0), x);
    }
}
