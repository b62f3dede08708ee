//! Time-domain pitch, duration and volume modification of diphone clips.

mod concat;
mod psola;
mod pulses;
mod shift;
mod usds;

pub use concat::{smooth_concat, ALIGN_WINDOW};
pub use psola::{excitation, psola, psola_core, placements, Placement};
pub use pulses::{detect_pulses, DEFAULT_SMOOTHING_MS};
pub use shift::{shift_diphone, split_point, ShiftPath};
pub use usds::{usds, usds_core, usds_schedule, USDS_CROSSFADE, USDS_FRAME};

use serde::Serialize;

/// Start and end targets for one clip; values in between are linear in
/// the clip's relative position.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShiftSpec {
    /// Frequency ratios.
    pub pitch: (f64, f64),
    pub duration: (f64, f64),
    pub volume: (f64, f64),
}

impl Default for ShiftSpec {
    fn default() -> Self {
        ShiftSpec::constant(1.0, 1.0, 1.0)
    }
}

fn lerp(a: (f64, f64), t: f64) -> f64 {
    a.0 + (a.1 - a.0) * t
}

impl ShiftSpec {
    pub fn constant(pitch: f64, duration: f64, volume: f64) -> Self {
        ShiftSpec {
            pitch: (pitch, pitch),
            duration: (duration, duration),
            volume: (volume, volume),
        }
    }

    pub fn pitch_at(&self, t: f64) -> f64 {
        lerp(self.pitch, t)
    }

    pub fn duration_at(&self, t: f64) -> f64 {
        lerp(self.duration, t)
    }

    pub fn volume_at(&self, t: f64) -> f64 {
        lerp(self.volume, t)
    }

    /// These targets restricted to relative positions `a..b`.
    pub fn slice(&self, a: f64, b: f64) -> Self {
        ShiftSpec {
            pitch: (self.pitch_at(a), self.pitch_at(b)),
            duration: (self.duration_at(a), self.duration_at(b)),
            volume: (self.volume_at(a), self.volume_at(b)),
        }
    }

    pub fn reversed(&self) -> Self {
        ShiftSpec {
            pitch: (self.pitch.1, self.pitch.0),
            duration: (self.duration.1, self.duration.0),
            volume: (self.volume.1, self.volume.0),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == ShiftSpec::default()
    }
}
