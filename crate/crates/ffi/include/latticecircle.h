#ifndef LATTICECIRCLE_H
#define LATTICECIRCLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_POINTER = 1,
  LC_STATUS_INVALID_ARGUMENT = 2,
  LC_STATUS_OUT_OF_RANGE = 3,
  LC_STATUS_INTERNAL = 4,
} LcStatus;

/**
 * Result of a classification run. Opaque to C.
 */
typedef struct LcClassification LcClassification;

/**
 * One classified `n`. `r2 = r2_num / r2_den`, `R_n = surd_s * sqrt(surd_d) / surd_q`.
 */
typedef struct LcRow {
  uint64_t n;
  /**
   * 1 for MC, 0 for non-MC.
   */
  uint8_t is_mc;
  uint64_t r2_num;
  uint64_t r2_den;
  uint64_t surd_s;
  uint64_t surd_d;
  uint64_t surd_q;
  /**
   * MC number the radius is inherited from; equals `n` for MC rows.
   */
  uint64_t source;
  /**
   * 1 when `impacting_index` is set (MC rows).
   */
  uint8_t has_impacting_index;
  /**
   * 1 when the index is exact, 0 when it is only a lower bound.
   */
  uint8_t impacting_index_exact;
  uint64_t impacting_index;
} LcRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Free with
 * [`lc_string_free`].
 */
char *lc_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lc_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *lc_version(void);

/**
 * Classifies every `0 <= n <= max`.
 *
 * # Safety
 * `out` must be a valid pointer. On success `*out` holds a handle to release
 * with [`lc_classification_free`].
 */
enum LcStatus lc_classify(uint64_t max, struct LcClassification **out);

/**
 * Number of rows, `max + 1`. Returns 0 for NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
size_t lc_classification_len(const struct LcClassification *h);

/**
 * Copies row `index` into `*out`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum LcStatus lc_classification_get(const struct LcClassification *h,
                                    size_t index,
                                    struct LcRow *out);

/**
 * `R_n` of row `index` as text such as `5√34/8`. Free with [`lc_string_free`].
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum LcStatus lc_classification_radius_string(const struct LcClassification *h,
                                              size_t index,
                                              char **out);

/**
 * Releases a classification handle. NULL is ignored.
 *
 * # Safety
 * `h` must be NULL or a handle from [`lc_classify`] not yet freed.
 */
void lc_classification_free(struct LcClassification *h);

/**
 * Lattice points strictly inside and exactly on the circle with center
 * `(cx_num/cx_den, cy_num/cy_den)` and squared radius `r2_num/r2_den`.
 *
 * # Safety
 * `interior` and `boundary` must be valid pointers.
 */
enum LcStatus lc_count_points(int64_t cx_num,
                              int64_t cx_den,
                              int64_t cy_num,
                              int64_t cy_den,
                              int64_t r2_num,
                              int64_t r2_den,
                              uint64_t *interior,
                              uint64_t *boundary);

/**
 * Points inside the circle centered at `(1/2, 1/2)` with `r^2 = k^2 + k + 1/2`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LcStatus lc_special_f(uint64_t k, uint64_t *out);

/**
 * Points inside the circle centered at the origin with `r^2 = k^2 + 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LcStatus lc_special_g(uint64_t k, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATTICECIRCLE_H */
