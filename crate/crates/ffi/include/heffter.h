#ifndef HEFFTER_H
#define HEFFTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HeffterStatus {
  HEFFTER_STATUS_OK = 0,
  HEFFTER_STATUS_INVALID_ARGUMENT = 1,
  HEFFTER_STATUS_NON_EXISTENT = 2,
  HEFFTER_STATUS_OPEN_CASE = 3,
  HEFFTER_STATUS_VERIFICATION_FAILED = 4,
  HEFFTER_STATUS_PARSE_ERROR = 5,
  HEFFTER_STATUS_NULL_POINTER = 6,
  HEFFTER_STATUS_INTERNAL = 7,
} HeffterStatus;

/**
 * Opaque array handle.
 */
typedef struct HeffterArray HeffterArray;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds and verifies an integer `H_t(m, n; s, k)`. On success `*out` receives
 * a handle owned by the caller.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum HeffterStatus heffter_construct(uint64_t m,
                                     uint64_t n,
                                     uint64_t s,
                                     uint64_t k,
                                     uint64_t t,
                                     struct HeffterArray **out);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t heffter_array_rows(const struct HeffterArray *a);

/**
 * Number of columns, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t heffter_array_cols(const struct HeffterArray *a);

/**
 * Reads cell `(row, col)`, 1-based. Returns true and writes `*value` if the
 * cell is filled; returns false for empty or out-of-range cells.
 *
 * # Safety
 * `a` must be null or a live handle; `value` must be null or writable.
 */
bool heffter_array_get(const struct HeffterArray *a, size_t row, size_t col, int64_t *value);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `a` must be null or a handle not yet freed.
 */
void heffter_array_free(struct HeffterArray *a);

/**
 * Parses the JSON array format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HeffterStatus heffter_array_from_json(const char *json, struct HeffterArray **out);

/**
 * Serializes to the JSON array format. Free the result with
 * [`heffter_string_free`]. Returns null for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
char *heffter_array_to_json(const struct HeffterArray *a);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from [`heffter_array_to_json`] not yet freed.
 */
void heffter_string_free(char *s);

/**
 * Verifies a handle against its own parameters. Returns `Ok` if it passes,
 * `VerificationFailed` otherwise, with the report as the last error message.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
enum HeffterStatus heffter_verify(const struct HeffterArray *a, bool simple);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *heffter_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEFFTER_H */
