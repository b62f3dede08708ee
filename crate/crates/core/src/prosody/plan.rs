use rand::Rng;
use serde::Serialize;

use super::settings::{ClassMode, ClassTarget, CurveSet, ProsodySettings, Range, Target};
use super::FrequencyTable;
use crate::phoneset::{Stress, StressedPhone};
use crate::postagger::Tag;

/// Frequency ratio for a shift in twelve-tone equal temperament.
pub fn steps_to_ratio(steps: f64) -> f64 {
    (steps / 12.0).exp2()
}

/// Shift targets for one phone; pitch is a frequency ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhoneTarget {
    pub volume: f64,
    pub pitch: f64,
    pub duration: f64,
}

impl PhoneTarget {
    pub const NEUTRAL: PhoneTarget = PhoneTarget {
        volume: 1.0,
        pitch: 1.0,
        duration: 1.0,
    };
}

pub struct PlanWord<'a> {
    pub text: &'a str,
    pub tag: Tag,
    pub phones: &'a [StressedPhone],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordPlan {
    /// Word-level contribution before stress, pitch in steps.
    pub word: Target,
    pub phones: Vec<PhoneTarget>,
}

/// Curve set chosen by the sentence's closing punctuation.
pub fn curve_set<'a>(settings: &'a ProsodySettings, terminator: &str) -> &'a CurveSet {
    if terminator.contains('?') {
        &settings.sentence.question
    } else if terminator.contains('!') {
        &settings.sentence.exclamation
    } else {
        &settings.sentence.period
    }
}

fn class_value(c: &ClassTarget, prev: Target, rng: &mut impl Rng) -> Target {
    let t = c.target;
    let mut v = match c.mode {
        ClassMode::Absolute => t,
        ClassMode::RelativeDelta => Target::new(
            prev.volume + t.volume,
            prev.pitch_steps + t.pitch_steps,
            prev.duration + t.duration,
        ),
        ClassMode::ApproachPercentage { fraction: f } => Target::new(
            prev.volume + (t.volume - prev.volume) * f,
            prev.pitch_steps + (t.pitch_steps - prev.pitch_steps) * f,
            prev.duration + (t.duration - prev.duration) * f,
        ),
    };
    let mut jitter = |x: &mut f64, j: f64| {
        if j > 0.0 {
            *x += rng.random_range(-j..=j);
        }
    };
    jitter(&mut v.volume, c.jitter.volume);
    jitter(&mut v.pitch_steps, c.jitter.pitch_steps);
    jitter(&mut v.duration, c.jitter.duration);
    v
}

fn stress_target(settings: &ProsodySettings, stress: Stress) -> Target {
    match stress {
        Stress::Unstressed => settings.stress.unstressed,
        Stress::Primary => settings.stress.primary,
        Stress::Secondary => settings.stress.secondary,
        Stress::NonVowel => Target::NEUTRAL,
    }
}

fn clamp(v: f64, r: Range) -> f64 {
    v.clamp(r.min, r.max)
}

/// Per-phone targets for one sentence of words. Sentence curves are read at
/// evenly spaced word positions on [0, 1]; volume and duration contributions
/// multiply and pitch steps add before conversion and clamping.
pub fn plan_sentence(
    words: &[PlanWord],
    terminator: &str,
    settings: &ProsodySettings,
    freq: &FrequencyTable,
    rng: &mut impl Rng,
) -> Vec<WordPlan> {
    let set = curve_set(settings, terminator);
    let (sv, sp, sd) = (set.volume.sampler(), set.pitch.sampler(), set.duration.sampler());
    let f = &settings.frequency;
    let (fv, fp, fd) = (f.volume.sampler(), f.pitch.sampler(), f.duration.sampler());
    let n = words.len();
    let mut prev = Target::NEUTRAL;
    let default_class = ClassTarget::default();
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let x = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
            let class = class_value(settings.classes.get(&w.tag).unwrap_or(&default_class), prev, rng);
            prev = class;
            let fx = freq.position(w.text);
            let word = Target::new(
                sv.eval(x) * class.volume * fv.eval(fx),
                sp.eval(x) + class.pitch_steps + fp.eval(fx),
                sd.eval(x) * class.duration * fd.eval(fx),
            );
            let c = &settings.clamps;
            let phones = w
                .phones
                .iter()
                .map(|p| {
                    let s = stress_target(settings, p.stress);
                    PhoneTarget {
                        volume: clamp(word.volume * s.volume, c.volume),
                        pitch: clamp(steps_to_ratio(word.pitch_steps + s.pitch_steps), c.pitch),
                        duration: clamp(word.duration * s.duration, c.duration),
                    }
                })
                .collect();
            WordPlan { word, phones }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phoneset::Phone;
    use crate::prosody::{Curve, Interpolation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &str) -> Vec<StressedPhone> {
        s.split(' ').map(|p| p.parse().unwrap()).collect()
    }

    #[test]
    fn twelve_tone_ratios() {
        assert_eq!(steps_to_ratio(12.0), 2.0);
        assert_eq!(steps_to_ratio(0.0), 1.0);
        assert!((steps_to_ratio(7.0) - 1.49831).abs() < 5e-6);
    }

    #[test]
    fn neutral_settings_plan_identity() {
        let s = ProsodySettings::neutral();
        let phones = sp("P R AA1 JH EH0 K T");
        let words = [
            PlanWord { text: "project", tag: Tag::Verb, phones: &phones },
            PlanWord { text: "it", tag: Tag::Pronoun, phones: &phones[..2] },
        ];
        let plan = plan_sentence(&words, ".", &s, &FrequencyTable::default(), &mut ChaCha8Rng::seed_from_u64(0));
        assert!(plan.iter().flat_map(|w| &w.phones).all(|p| *p == PhoneTarget::NEUTRAL));
    }

    #[test]
    fn primary_stress_pitch() {
        let mut s = ProsodySettings::neutral();
        s.stress.primary.pitch_steps = 12.0 * 1.5f64.log2();
        let phones = sp("P R AA1 JH EH0 K T");
        let words = [PlanWord { text: "project", tag: Tag::Verb, phones: &phones }];
        let plan = plan_sentence(&words, ".", &s, &FrequencyTable::default(), &mut ChaCha8Rng::seed_from_u64(0));
        let pitches: Vec<f64> = plan[0].phones.iter().map(|p| p.pitch).collect();
        assert!((pitches[2] - 1.5).abs() < 1e-12);
        assert!(pitches.iter().enumerate().all(|(i, &p)| i == 2 || p == 1.0));
    }

    #[test]
    fn sentence_curve_positions_and_clamps() {
        let mut s = ProsodySettings::neutral();
        s.sentence.period.volume = Curve::new(Interpolation::Linear, vec![(0.0, 1.0), (1.0, 0.0)]).unwrap();
        let phones = sp("AA1");
        let words: Vec<PlanWord> = ["a", "b", "c"]
            .iter()
            .map(|t| PlanWord { text: t, tag: Tag::Noun, phones: &phones })
            .collect();
        let plan = plan_sentence(&words, ".", &s, &FrequencyTable::default(), &mut ChaCha8Rng::seed_from_u64(0));
        let w: Vec<f64> = plan.iter().map(|p| p.word.volume).collect();
        assert_eq!(w, [1.0, 0.5, 0.0]);
        assert_eq!(plan[2].phones[0].volume, s.clamps.volume.min);
        // the question set is untouched
        let q = plan_sentence(&words, "?", &s, &FrequencyTable::default(), &mut ChaCha8Rng::seed_from_u64(0));
        assert!(q.iter().all(|p| p.word.volume == 1.0));
    }

    #[test]
    fn class_modes() {
        let mut s = ProsodySettings::neutral();
        s.classes.insert(
            Tag::Noun,
            ClassTarget {
                target: Target::new(0.0, 1.0, 0.0),
                mode: ClassMode::RelativeDelta,
                jitter: Target::ZERO,
            },
        );
        s.classes.insert(
            Tag::Verb,
            ClassTarget {
                target: Target::new(1.0, 4.0, 1.0),
                mode: ClassMode::ApproachPercentage { fraction: 0.5 },
                jitter: Target::ZERO,
            },
        );
        let phones: Vec<StressedPhone> = vec![StressedPhone::plain(Phone::M)];
        let tags = [Tag::Noun, Tag::Noun, Tag::Verb];
        let words: Vec<PlanWord> = tags
            .iter()
            .map(|&tag| PlanWord { text: "x", tag, phones: &phones })
            .collect();
        let plan = plan_sentence(&words, ".", &s, &FrequencyTable::default(), &mut ChaCha8Rng::seed_from_u64(0));
        let steps: Vec<f64> = plan.iter().map(|p| p.word.pitch_steps).collect();
        assert_eq!(steps, [1.0, 2.0, 3.0]);
    }

    #[test]
    fn jitter_is_seeded() {
        let mut s = ProsodySettings::neutral();
        s.classes.insert(
            Tag::Noun,
            ClassTarget {
                jitter: Target::new(0.1, 1.0, 0.1),
                ..ClassTarget::default()
            },
        );
        let phones = sp("AA1");
        let words: Vec<PlanWord> = (0..5)
            .map(|_| PlanWord { text: "x", tag: Tag::Noun, phones: &phones })
            .collect();
        let run = |seed| plan_sentence(&words, ".", &s, &FrequencyTable::default(), &mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
        assert!(run(7).iter().all(|w| (w.word.pitch_steps).abs() <= 1.0));
    }
}
