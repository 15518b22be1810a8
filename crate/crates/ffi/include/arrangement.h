#ifndef ARRANGEMENT_H
#define ARRANGEMENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum ArrStatus {
  ARR_STATUS_OK = 0,
  ARR_STATUS_NULL_POINTER = 1,
  ARR_STATUS_INVALID_UTF8 = 2,
  ARR_STATUS_PARSE_ERROR = 3,
  ARR_STATUS_NOT_ESSENTIAL = 4,
  ARR_STATUS_BAD_PRIME = 5,
  ARR_STATUS_BUDGET_EXCEEDED = 6,
  ARR_STATUS_BUFFER_TOO_SMALL = 7,
  ARR_STATUS_INTERNAL = 8,
} ArrStatus;

/**
 * An arrangement over `Q` or `F_p`.
 */
typedef struct ArrArrangement ArrArrangement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an arrangement from JSON text. On success `*out` owns a handle
 * to release with [`arr_arrangement_free`].
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ArrStatus arr_arrangement_from_json(const char *json, struct ArrArrangement **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `h` must come from [`arr_arrangement_from_json`] and not be used again.
 */
void arr_arrangement_free(struct ArrArrangement *h);

/**
 * Ambient dimension.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum ArrStatus arr_arrangement_dim(const struct ArrArrangement *h, size_t *out);

/**
 * Number of hyperplanes.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum ArrStatus arr_arrangement_len(const struct ArrArrangement *h, size_t *out);

/**
 * Coefficients of the characteristic polynomial, constant term first.
 * `*len` receives the number of coefficients (`dim + 1`); if `cap` is
 * smaller nothing is written and `BufferTooSmall` is returned.
 *
 * # Safety
 * `coeffs` must hold `cap` values (it may be null when `cap` is 0) and
 * `len` must be a valid pointer.
 */
enum ArrStatus arr_arrangement_char_poly(const struct ArrArrangement *h,
                                         int64_t *coeffs,
                                         size_t cap,
                                         size_t *len);

/**
 * Number of regions of the complement.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum ArrStatus arr_arrangement_regions(const struct ArrArrangement *h, uint64_t *out);

/**
 * Points of `F_p^d` off every hyperplane. Rational arrangements are
 * reduced mod `p`; for arrangements over `F_p`, pass `p = 0` or the
 * field's prime.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum ArrStatus arr_arrangement_ff_count(const struct ArrArrangement *h,
                                        uint64_t p,
                                        uint64_t budget,
                                        uint64_t *out);

/**
 * The extension classification report as JSON, the same document the
 * `classify` command writes. Free the string with [`arr_string_free`].
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum ArrStatus arr_arrangement_classify_json(const struct ArrArrangement *h, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used again.
 */
void arr_string_free(char *s);

/**
 * The message of the last failed call on this thread, or null. Valid
 * until the next failing call on the same thread.
 */
const char *arr_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARRANGEMENT_H */
