//! Sentence prosody: stress, lexical-class, word-frequency and sentence
//! position targets composed per phone.

mod curve;
mod frequency;
mod plan;
mod settings;

pub use curve::{Curve, Interpolation, Sampler};
pub use frequency::FrequencyTable;
pub use plan::{curve_set, plan_sentence, steps_to_ratio, PhoneTarget, PlanWord, WordPlan};
pub use settings::{
    ClassMode, ClassTarget, Clamps, CurveSet, ProsodySettings, Range, SentenceCurves, StressTargets, Target,
};
