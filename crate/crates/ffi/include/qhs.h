#ifndef QHS_H
#define QHS_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every entry point.
typedef enum QhsStatus {
  QHS_STATUS_OK = 0,
  // A required pointer argument was null.
  QHS_STATUS_NULL_POINTER = 1,
  // Bad parameter, malformed string or invalid index vector.
  QHS_STATUS_INVALID_ARGUMENT = 2,
  // Brute-force enumeration would exceed its cap.
  QHS_STATUS_TOO_LARGE = 3,
  // The value exists but is not rational.
  QHS_STATUS_NOT_RATIONAL = 4,
  // Division by zero or another arithmetic domain error.
  QHS_STATUS_ARITHMETIC = 5,
  // A verification run found an unexpected mismatch.
  QHS_STATUS_MISMATCH = 6,
  // Internal panic caught at the boundary.
  QHS_STATUS_PANIC = 7,
} QhsStatus;

// Precomputed root-of-unity data for one `n`.
typedef struct QhsRootSums QhsRootSums;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library from the same thread.
const char *qhs_last_error(void);

// Library version as a static nul-terminated string.
const char *qhs_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void qhs_string_free(char *s);

// Creates a handle for sums at a primitive `n`-th root of unity (`n >= 2`).
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum QhsStatus qhs_root_sums_new(uint32_t n, struct QhsRootSums **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must come from [`qhs_root_sums_new`] and not have been freed already.
void qhs_root_sums_free(struct QhsRootSums *h);

// The order `n` of the handle, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
uint32_t qhs_root_sums_order(const struct QhsRootSums *h);

// Evaluates the nested sum for `indices`. Writes JSON
// `{"n":..,"coeffs":["p/q",..]}` in the power basis of Q(zeta_n).
//
// # Safety
// `h` must be a live handle, `indices` must point to `len` values, and
// `out` must be writable.
enum QhsStatus qhs_root_sums_compute(const struct QhsRootSums *h,
                                     const uint32_t *indices,
                                     uintptr_t len,
                                     char **out);

// Like [`qhs_root_sums_compute`] but writes the value as `"p/q"`; fails with
// [`QhsStatus::NotRational`] when it lies outside Q.
//
// # Safety
// Same as [`qhs_root_sums_compute`].
enum QhsStatus qhs_root_sums_compute_rational(const struct QhsRootSums *h,
                                              const uint32_t *indices,
                                              uintptr_t len,
                                              char **out);

// Brute-force enumeration of the same sum, capped at `cap` tuples
// (0 selects the default cap). Writes the same JSON as the DP path.
//
// # Safety
// Same as [`qhs_root_sums_compute`].
enum QhsStatus qhs_root_sums_compute_brute(const struct QhsRootSums *h,
                                           const uint32_t *indices,
                                           uintptr_t len,
                                           uint64_t cap,
                                           char **out);

// Single-index sum with exponent `s >= 1`, written as `"p/q"`.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum QhsStatus qhs_root_sums_single(const struct QhsRootSums *h, uint32_t s, char **out);

// Cyclic sum of the all-ones pattern with one slot raised to `a`, depth `m`.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum QhsStatus qhs_root_sums_cyclic_ones(const struct QhsRootSums *h,
                                         uint32_t a,
                                         uint32_t m,
                                         char **out);

// Cyclic sum of the all-twos pattern with one slot raised to `a`, depth `m`.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum QhsStatus qhs_root_sums_cyclic_twos(const struct QhsRootSums *h,
                                         uint32_t a,
                                         uint32_t m,
                                         char **out);

// Nested sum at a rational `q` (given as `"p/q"`) over `1..upper-1`,
// written as `"p/q"`.
//
// # Safety
// `q` must be a nul-terminated string, `indices` must point to `len`
// values, and `out` must be writable.
enum QhsStatus qhs_rational_q_sum(const char *q,
                                  uint32_t upper,
                                  const uint32_t *indices,
                                  uintptr_t len,
                                  char **out);

// Runs a verification suite and writes its JSON report. Returns
// [`QhsStatus::Mismatch`] (with the report still written) when any case
// fails unexpectedly. `jobs == 0` uses one thread.
//
// # Safety
// `suite` must be a nul-terminated string and `out` writable.
enum QhsStatus qhs_verify(const char *suite,
                          uint32_t max_n,
                          uint32_t max_m,
                          uint32_t max_a,
                          uint32_t max_s,
                          uint32_t jobs,
                          char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHS_H */
