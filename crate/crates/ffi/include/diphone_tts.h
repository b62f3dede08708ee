#ifndef DIPHONE_TTS_H
#define DIPHONE_TTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TtsStatus {
  TTS_STATUS_OK = 0,
  TTS_STATUS_USAGE = 1,
  TTS_STATUS_DATA = 2,
  TTS_STATUS_AUDIO = 3,
  TTS_STATUS_NULL_ARGUMENT = 4,
  TTS_STATUS_INVALID_UTF8 = 5,
  TTS_STATUS_PANIC = 6,
} TtsStatus;

/**
 * Opaque engine handle.
 */
typedef struct TtsEngine TtsEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads resources from `data_dir` and the bank in `bank_dir`. A null
 * `bank_dir` selects the built-in synthetic bank; a null `settings_path`
 * the default prosody settings.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum TtsStatus tts_engine_new(const char *data_dir,
                              const char *bank_dir,
                              const char *settings_path,
                              struct TtsEngine **out);

/**
 * # Safety
 * `engine` must come from [`tts_engine_new`] and not be used afterwards.
 */
void tts_engine_free(struct TtsEngine *engine);

/**
 * Seed for prosody jitter in later calls.
 *
 * # Safety
 * `engine` must be a live handle not shared with a concurrent call.
 */
enum TtsStatus tts_engine_set_seed(struct TtsEngine *engine, uint64_t seed);

/**
 * Synthesizes `text` to a 48 kHz 24-bit mono WAV file image.
 *
 * # Safety
 * `engine` must be live, `text` NUL-terminated, `out` and `out_len`
 * writable. Release the buffer with [`tts_bytes_free`].
 */
enum TtsStatus tts_synthesize_wav(const struct TtsEngine *engine,
                                  const char *text,
                                  uint8_t **out,
                                  size_t *out_len);

/**
 * # Safety
 * `bytes` and `len` must be exactly as returned by [`tts_synthesize_wav`].
 */
void tts_bytes_free(uint8_t *bytes, size_t len);

/**
 * Letter-to-sound conversion of one word, space-separated phones.
 *
 * # Safety
 * `engine` must be live, `word` NUL-terminated and `out` writable. Release
 * the string with [`tts_string_free`].
 */
enum TtsStatus tts_g2p(const struct TtsEngine *engine, const char *word, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tts_string_free(char *s);

/**
 * Message for the last failed call on this thread, empty after a success.
 * Valid until the next call into the library on this thread.
 */
const char *tts_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIPHONE_TTS_H */
