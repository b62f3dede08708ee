//! C ABI over the engine. Every function returns a [`TtsStatus`]; on
//! failure the message is available from [`tts_last_error`] on the same
//! thread. Buffers handed out by the library are released with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use diphone_tts::audio::wav_bytes;
use diphone_tts::bank::{fixture_bank, DiphoneBank};
use diphone_tts::prosody::ProsodySettings;
use diphone_tts::synth::{Engine, Resources};
use diphone_tts::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtsStatus {
    Ok = 0,
    Usage = 1,
    Data = 2,
    Audio = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Opaque engine handle.
pub struct TtsEngine {
    engine: Engine,
    settings: ProsodySettings,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: TtsStatus, msg: &str) -> TtsStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> TtsStatus {
    let status = match e.exit_code() {
        1 => TtsStatus::Usage,
        2 => TtsStatus::Data,
        _ => TtsStatus::Audio,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning panics into [`TtsStatus::Panic`].
fn guard(f: impl FnOnce() -> TtsStatus) -> TtsStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(TtsStatus::Panic, &msg)
        }
    }
}

/// Borrows a required C string.
unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, TtsStatus> {
    if p.is_null() {
        return Err(fail(TtsStatus::NullArgument, &format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TtsStatus::InvalidUtf8, &format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, TtsStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        cstr(p, what).map(Some)
    }
}

/// Loads resources from `data_dir` and the bank in `bank_dir`. A null
/// `bank_dir` selects the built-in synthetic bank; a null `settings_path`
/// the default prosody settings.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tts_engine_new(
    data_dir: *const c_char,
    bank_dir: *const c_char,
    settings_path: *const c_char,
    out: *mut *mut TtsEngine,
) -> TtsStatus {
    guard(|| {
        if out.is_null() {
            return fail(TtsStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let load = || -> Result<TtsEngine, TtsStatus> {
            let data = cstr(data_dir, "data_dir")?;
            let bank = match optional_text(bank_dir, "bank_dir")? {
                Some(dir) => DiphoneBank::load(Path::new(dir)).map_err(|e| from_error(&e))?,
                None => fixture_bank(),
            };
            let settings = match optional_text(settings_path, "settings_path")? {
                Some(p) => ProsodySettings::load(Path::new(p)).map_err(|e| from_error(&e))?,
                None => ProsodySettings::default(),
            };
            let resources = Resources::load(Path::new(data)).map_err(|e| from_error(&e))?;
            Ok(TtsEngine {
                engine: Engine::new(resources, bank),
                settings,
            })
        };
        match load() {
            Ok(e) => {
                *out = Box::into_raw(Box::new(e));
                TtsStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// # Safety
/// `engine` must come from [`tts_engine_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tts_engine_free(engine: *mut TtsEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Seed for prosody jitter in later calls.
///
/// # Safety
/// `engine` must be a live handle not shared with a concurrent call.
#[no_mangle]
pub unsafe extern "C" fn tts_engine_set_seed(engine: *mut TtsEngine, seed: u64) -> TtsStatus {
    guard(|| match engine.as_mut() {
        Some(e) => {
            e.settings.seed = seed;
            TtsStatus::Ok
        }
        None => fail(TtsStatus::NullArgument, "engine is null"),
    })
}

/// Synthesizes `text` to a 48 kHz 24-bit mono WAV file image.
///
/// # Safety
/// `engine` must be live, `text` NUL-terminated, `out` and `out_len`
/// writable. Release the buffer with [`tts_bytes_free`].
#[no_mangle]
pub unsafe extern "C" fn tts_synthesize_wav(
    engine: *const TtsEngine,
    text: *const c_char,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> TtsStatus {
    guard(|| {
        if out.is_null() || out_len.is_null() {
            return fail(TtsStatus::NullArgument, "out or out_len is null");
        }
        *out = ptr::null_mut();
        *out_len = 0;
        let Some(e) = engine.as_ref() else {
            return fail(TtsStatus::NullArgument, "engine is null");
        };
        let t = match cstr(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let syn = e.engine.synthesize(t, &e.settings);
        let bytes = wav_bytes(&syn.samples).into_boxed_slice();
        *out_len = bytes.len();
        *out = Box::into_raw(bytes) as *mut u8;
        TtsStatus::Ok
    })
}

/// # Safety
/// `bytes` and `len` must be exactly as returned by [`tts_synthesize_wav`].
#[no_mangle]
pub unsafe extern "C" fn tts_bytes_free(bytes: *mut u8, len: usize) {
    if !bytes.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(bytes, len)));
    }
}

/// Letter-to-sound conversion of one word, space-separated phones.
///
/// # Safety
/// `engine` must be live, `word` NUL-terminated and `out` writable. Release
/// the string with [`tts_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tts_g2p(engine: *const TtsEngine, word: *const c_char, out: *mut *mut c_char) -> TtsStatus {
    guard(|| {
        if out.is_null() {
            return fail(TtsStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let Some(e) = engine.as_ref() else {
            return fail(TtsStatus::NullArgument, "engine is null");
        };
        let w = match cstr(word, "word") {
            Ok(w) => w,
            Err(s) => return s,
        };
        let phones = e.engine.resources.g2p.decode(w).phonemes.join(" ");
        *out = CString::new(phones).expect("phone symbols have no NUL").into_raw();
        TtsStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
