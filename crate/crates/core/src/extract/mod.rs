//! Voice building: silence calibration, monophone sectioning and automatic
//! diphone boundary detection on prompted recordings.

mod diphone;
mod mono;
mod silence;
mod spectral;

pub use diphone::{
    distance_line, extract_persistent_diphone, extract_stop_diphone, smooth_line, transition_frames,
    DiphoneCut,
};
pub use mono::{section_monophone, short_rms, MonophoneRecord, FADE};
pub use silence::{calibrate_silence, speech_span, SilenceProfile, LSB};
pub use spectral::{frame_centre, spectral_distance, spectral_profile, Stft, STFT_HOP, STFT_WINDOW};
