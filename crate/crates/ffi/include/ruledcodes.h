#ifndef RULEDCODES_H
#define RULEDCODES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  RC_STATUS_INVALID_ARGUMENT = 2,
  RC_STATUS_PARSE = 3,
  RC_STATUS_PRECONDITION = 4,
  RC_STATUS_CAP_EXCEEDED = 5,
  RC_STATUS_DOMAIN = 6,
  RC_STATUS_BUFFER_TOO_SMALL = 7,
  RC_STATUS_UNRECOVERABLE = 8,
  RC_STATUS_INTERNAL = 99,
} RcStatus;

/**
 * A linear code with its column index and recovery sets.
 */
typedef struct RcCode RcCode;

typedef struct RcBound {
  int64_t n;
  int64_t k_lower;
  int64_t d_lower;
  bool valid;
} RcBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *rc_last_error(void);

/**
 * Build the code described by a JSON experiment config.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RcStatus rc_code_from_config(const char *json, struct RcCode **out);

/**
 * Read a code from the `k n q` matrix format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RcStatus rc_code_from_matrix(const char *text, struct RcCode **out);

/**
 * # Safety
 * `code` must come from this library and not be used afterwards.
 */
void rc_code_free(struct RcCode *code);

/**
 * # Safety
 * `code` must be a live handle; output pointers must be writable.
 */
enum RcStatus rc_code_dims(const struct RcCode *code, size_t *n, size_t *k, uint64_t *q);

/**
 * Copy the generator matrix, row-major, into `buf` of length `len >= k n`.
 *
 * # Safety
 * `buf` must point to `len` writable `u32`s.
 */
enum RcStatus rc_code_generator(const struct RcCode *code, uint32_t *buf, size_t len);

/**
 * Encode a message of length `k` into `out` of length `n`.
 *
 * # Safety
 * `msg` must hold `msg_len` values and `out` `out_len` writable slots.
 */
enum RcStatus rc_code_encode(const struct RcCode *code,
                             const uint32_t *msg,
                             size_t msg_len,
                             uint32_t *out,
                             size_t out_len);

/**
 * Exhaustive minimum distance, provided `q^k <= cap`.
 *
 * # Safety
 * `code` must be a live handle and `d` writable.
 */
enum RcStatus rc_code_min_distance(const struct RcCode *code, uint64_t cap, size_t *d);

/**
 * Recovery sets of every column as a JSON array; release with
 * [`rc_string_free`].
 *
 * # Safety
 * `code` must be a live surface code handle and `out` writable.
 */
enum RcStatus rc_code_recovery_sets_json(struct RcCode *code, char **out);

/**
 * Repair position `target` of a received word from the first recovery set
 * whose helpers are all present. `erased[i] != 0` marks an erasure.
 *
 * # Safety
 * `word` and `erased` must hold `len` values; `value` must be writable.
 */
enum RcStatus rc_code_recover(struct RcCode *code,
                              const uint32_t *word,
                              const uint8_t *erased,
                              size_t len,
                              size_t target,
                              uint32_t *value);

/**
 * # Safety
 * `s` must come from this library.
 */
void rc_string_free(char *s);

/**
 * Bounds for codes on an elementary transform with a center of degree `d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_bound_elm(int64_t q,
                           int64_t n_rational,
                           int64_t g,
                           int64_t d,
                           int64_t a,
                           int64_t b,
                           struct RcBound *out);

/**
 * Bounds for codes on `P(O + O(-delta))` with `e = deg delta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_bound_decomposable(int64_t q,
                                    int64_t n_rational,
                                    int64_t g,
                                    int64_t e,
                                    int64_t a,
                                    int64_t b,
                                    struct RcBound *out);

/**
 * Bounds for unisecant codes.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_bound_unisecant(int64_t q,
                                 int64_t n_rational,
                                 int64_t g,
                                 int64_t deg_e,
                                 int64_t s_a,
                                 int64_t deg_l,
                                 struct RcBound *out);

/**
 * Maximal limit rate of ruled-surface codes at relative distance `1 - b`.
 *
 * # Safety
 * `a0` and `rate` must be writable.
 */
enum RcStatus rc_optimized_rate(double q, double a_q, double b, double *a0, double *rate);

double rc_envelope_coefficient(double q, double a_q);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RULEDCODES_H */
