use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::curve::{Curve, Interpolation};
use crate::error::{Error, Result};
use crate::postagger::Tag;

/// Volume and duration are multipliers; pitch is in twelve-tone steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub volume: f64,
    pub pitch_steps: f64,
    pub duration: f64,
}

impl Target {
    pub const NEUTRAL: Target = Target {
        volume: 1.0,
        pitch_steps: 0.0,
        duration: 1.0,
    };

    pub const ZERO: Target = Target {
        volume: 0.0,
        pitch_steps: 0.0,
        duration: 0.0,
    };

    pub fn new(volume: f64, pitch_steps: f64, duration: f64) -> Self {
        Target {
            volume,
            pitch_steps,
            duration,
        }
    }
}

impl Default for Target {
    fn default() -> Self {
        Target::NEUTRAL
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ClassMode {
    /// The word takes the target.
    #[default]
    Absolute,
    /// The previous word's value plus the target taken as a delta
    /// (volume and duration deltas are added to the multiplier).
    RelativeDelta,
    /// The previous word's value moved this fraction toward the target.
    ApproachPercentage { fraction: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassTarget {
    pub target: Target,
    #[serde(flatten)]
    pub mode: ClassMode,
    /// Uniform jitter half-widths per variable.
    #[serde(default = "zero_target")]
    pub jitter: Target,
}

fn zero_target() -> Target {
    Target::ZERO
}

impl Default for ClassTarget {
    fn default() -> Self {
        ClassTarget {
            target: Target::NEUTRAL,
            mode: ClassMode::Absolute,
            jitter: Target::ZERO,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSet {
    pub volume: Curve,
    /// In twelve-tone steps.
    pub pitch: Curve,
    pub duration: Curve,
}

impl CurveSet {
    pub fn neutral() -> Self {
        CurveSet {
            volume: Curve::constant(1.0),
            pitch: Curve::constant(0.0),
            duration: Curve::constant(1.0),
        }
    }

    fn curves(&self) -> [&Curve; 3] {
        [&self.volume, &self.pitch, &self.duration]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SentenceCurves {
    pub period: CurveSet,
    pub question: CurveSet,
    pub exclamation: CurveSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

/// Bounds on the composed multipliers (pitch as a frequency ratio).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clamps {
    pub volume: Range,
    pub pitch: Range,
    pub duration: Range,
}

impl Default for Clamps {
    fn default() -> Self {
        Clamps {
            volume: Range { min: 0.05, max: 2.0 },
            pitch: Range { min: 0.5, max: 2.0 },
            duration: Range { min: 0.25, max: 4.0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressTargets {
    pub unstressed: Target,
    pub primary: Target,
    pub secondary: Target,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProsodySettings {
    #[serde(default)]
    pub seed: u64,
    pub stress: StressTargets,
    #[serde(default)]
    pub classes: BTreeMap<Tag, ClassTarget>,
    pub sentence: SentenceCurves,
    /// Curves over the [1, 7] log-frequency axis.
    pub frequency: CurveSet,
    /// Punctuation → pause in seconds.
    pub pauses: BTreeMap<String, f64>,
    #[serde(default)]
    pub clamps: Clamps,
}

fn default_pauses() -> BTreeMap<String, f64> {
    [(",", 0.25), (";", 0.35), (":", 0.35), (".", 0.6), ("?", 0.6), ("!", 0.6), ("...", 0.8)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn lin(points: &[(f64, f64)]) -> Curve {
    Curve {
        kind: Interpolation::Linear,
        points: points.to_vec(),
    }
}

fn quintic(points: &[(f64, f64)]) -> Curve {
    Curve {
        kind: Interpolation::Quintic,
        points: points.to_vec(),
    }
}

impl ProsodySettings {
    /// Every multiplier 1, default pauses.
    pub fn neutral() -> Self {
        ProsodySettings {
            seed: 0,
            stress: StressTargets {
                unstressed: Target::NEUTRAL,
                primary: Target::NEUTRAL,
                secondary: Target::NEUTRAL,
            },
            classes: BTreeMap::new(),
            sentence: SentenceCurves {
                period: CurveSet::neutral(),
                question: CurveSet::neutral(),
                exclamation: CurveSet::neutral(),
            },
            frequency: CurveSet::neutral(),
            pauses: default_pauses(),
            clamps: Clamps::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let s: ProsodySettings =
            toml::from_str(text).map_err(|e| Error::Data(format!("settings: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("settings serialize")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&crate::error::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let sets = [
            &self.sentence.period,
            &self.sentence.question,
            &self.sentence.exclamation,
            &self.frequency,
        ];
        for set in sets {
            for c in set.curves() {
                c.validate()?;
            }
        }
        if let Some((k, v)) = self.pauses.iter().find(|(_, v)| !(**v >= 0.0)) {
            return Err(Error::Data(format!("settings: pause for {k:?} is {v}")));
        }
        for (name, r) in [
            ("volume", self.clamps.volume),
            ("pitch", self.clamps.pitch),
            ("duration", self.clamps.duration),
        ] {
            if !(r.min > 0.0 && r.min <= r.max) {
                return Err(Error::Data(format!("settings: bad {name} clamp {r:?}")));
            }
        }
        for (tag, c) in &self.classes {
            if let ClassMode::ApproachPercentage { fraction } = c.mode {
                if !(0.0..=1.0).contains(&fraction) {
                    return Err(Error::Data(format!("settings: class {tag} fraction {fraction}")));
                }
            }
        }
        Ok(())
    }

    /// Pause for a punctuation token: the longest configured pause among
    /// the marks it contains.
    pub fn pause_for(&self, punct: &str) -> f64 {
        if punct.contains("...") || punct.contains('…') {
            if let Some(v) = self.pauses.get("...") {
                return *v;
            }
        }
        punct
            .chars()
            .filter_map(|c| self.pauses.get(c.encode_utf8(&mut [0; 4]) as &str))
            .fold(0.0, |m, v| m.max(*v))
    }
}

impl Default for ProsodySettings {
    /// Mild stress marking, emphasized content words and a falling
    /// declarative contour.
    fn default() -> Self {
        let mut s = ProsodySettings::neutral();
        s.stress = StressTargets {
            unstressed: Target::new(0.9, -0.5, 0.9),
            primary: Target::new(1.1, 1.0, 1.15),
            secondary: Target::new(1.0, 0.25, 1.02),
        };
        let content = ClassTarget {
            target: Target::new(1.05, 0.5, 1.05),
            ..ClassTarget::default()
        };
        let function = ClassTarget {
            target: Target::new(0.9, -0.5, 0.85),
            ..ClassTarget::default()
        };
        for t in [Tag::Noun, Tag::Plural, Tag::Verb, Tag::Adjective] {
            s.classes.insert(t, content);
        }
        for t in [Tag::Article, Tag::Conjunction, Tag::Preposition, Tag::Pronoun] {
            s.classes.insert(t, function);
        }
        s.sentence.period.pitch = quintic(&[(0.0, 1.0), (0.5, 0.5), (1.0, -2.0)]);
        s.sentence.period.duration = lin(&[(0.0, 1.0), (0.8, 1.0), (1.0, 1.2)]);
        s.sentence.question.pitch = quintic(&[(0.0, 0.0), (0.6, -0.5), (1.0, 3.0)]);
        s.sentence.question.duration = lin(&[(0.0, 1.0), (0.8, 1.0), (1.0, 1.2)]);
        s.sentence.exclamation.volume = lin(&[(0.0, 1.15), (1.0, 1.05)]);
        s.sentence.exclamation.pitch = quintic(&[(0.0, 2.0), (0.5, 2.5), (1.0, 0.0)]);
        s.frequency.duration = lin(&[(1.0, 1.1), (7.0, 0.9)]);
        s.frequency.volume = lin(&[(1.0, 1.05), (7.0, 0.95)]);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let mut s = ProsodySettings::default();
        s.classes.insert(
            Tag::Adverb,
            ClassTarget {
                target: Target::new(1.0, 0.5, 1.0),
                mode: ClassMode::ApproachPercentage { fraction: 0.25 },
                jitter: Target::new(0.0, 0.3, 0.0),
            },
        );
        let text = s.to_toml();
        assert_eq!(ProsodySettings::from_toml(&text).unwrap(), s);
        let neutral = ProsodySettings::neutral();
        assert_eq!(ProsodySettings::from_toml(&neutral.to_toml()).unwrap(), neutral);
    }

    #[test]
    fn pauses() {
        let s = ProsodySettings::neutral();
        assert_eq!(s.pause_for(","), 0.25);
        assert_eq!(s.pause_for(";"), 0.35);
        assert_eq!(s.pause_for("?!"), 0.6);
        assert_eq!(s.pause_for("..."), 0.8);
        assert_eq!(s.pause_for("\""), 0.0);
    }

    #[test]
    fn validation() {
        let mut s = ProsodySettings::neutral();
        s.pauses.insert(",".into(), -1.0);
        assert!(s.validate().is_err());
        let mut s = ProsodySettings::neutral();
        s.sentence.period.pitch.points.clear();
        assert!(s.validate().is_err());
        assert!(ProsodySettings::from_toml("seed = 1").is_err());
    }
}
