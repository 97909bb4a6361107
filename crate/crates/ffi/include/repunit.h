#ifndef REPUNIT_H
#define REPUNIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RepunitStatus {
  REPUNIT_STATUS_OK = 0,
  REPUNIT_STATUS_NULL_POINTER = 1,
  REPUNIT_STATUS_INVALID_PARAMS = 2,
  REPUNIT_STATUS_OUT_OF_RANGE = 3,
  REPUNIT_STATUS_BUFFER_TOO_SMALL = 4,
  REPUNIT_STATUS_INVARIANT_BREACH = 5,
  REPUNIT_STATUS_VERIFICATION_FAILED = 6,
  REPUNIT_STATUS_PANIC = 7,
} RepunitStatus;

/**
 * Opaque resolution handle.
 */
typedef struct RepunitResolutionHandle RepunitResolutionHandle;

/**
 * Opaque semigroup handle.
 */
typedef struct RepunitSemigroupHandle RepunitSemigroupHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *repunit_last_error(void);

/**
 * Builds the semigroup for `(b, n, a)`.
 */
enum RepunitStatus repunit_semigroup_new(int64_t b,
                                         int64_t n,
                                         int64_t a,
                                         struct RepunitSemigroupHandle **out);

/**
 * Releases a semigroup. Null is ignored.
 */
void repunit_semigroup_free(struct RepunitSemigroupHandle *handle);

enum RepunitStatus repunit_semigroup_embedding_dimension(const struct RepunitSemigroupHandle *handle,
                                                         size_t *out);

/**
 * Minimal generators `a1 .. an`.
 */
enum RepunitStatus repunit_semigroup_generators(const struct RepunitSemigroupHandle *handle,
                                                int64_t *buf,
                                                size_t cap,
                                                size_t *len_out);

/**
 * `a_(n+1) = (a + 1) a1`.
 */
enum RepunitStatus repunit_semigroup_extended(const struct RepunitSemigroupHandle *handle,
                                              int64_t *out);

/**
 * `c = b^n - 1 - a`.
 */
enum RepunitStatus repunit_semigroup_c(const struct RepunitSemigroupHandle *handle, int64_t *out);

enum RepunitStatus repunit_semigroup_frobenius(const struct RepunitSemigroupHandle *handle,
                                               int64_t *out);

/**
 * Membership test; negative `s` gives `OutOfRange`.
 */
enum RepunitStatus repunit_semigroup_contains(const struct RepunitSemigroupHandle *handle,
                                              int64_t s,
                                              bool *out);

/**
 * Pseudo-Frobenius elements from the closed form, ascending.
 */
enum RepunitStatus repunit_semigroup_pseudo_frobenius(const struct RepunitSemigroupHandle *handle,
                                                      int64_t *buf,
                                                      size_t cap,
                                                      size_t *len_out);

/**
 * Builds the resolution of the semigroup algebra. The semigroup handle is
 * not consumed.
 */
enum RepunitStatus repunit_resolution_new(const struct RepunitSemigroupHandle *handle,
                                          struct RepunitResolutionHandle **out);

/**
 * Releases a resolution. Null is ignored.
 */
void repunit_resolution_free(struct RepunitResolutionHandle *handle);

/**
 * Number of levels, `n - 1`.
 */
enum RepunitStatus repunit_resolution_length(const struct RepunitResolutionHandle *handle,
                                             size_t *out);

/**
 * Rank of the free module at level `j` (1-based).
 */
enum RepunitStatus repunit_resolution_betti(const struct RepunitResolutionHandle *handle,
                                            size_t j,
                                            size_t *out);

/**
 * Shifts of level `j` in basis order.
 */
enum RepunitStatus repunit_resolution_shifts(const struct RepunitResolutionHandle *handle,
                                             size_t j,
                                             int64_t *buf,
                                             size_t cap,
                                             size_t *len_out);

/**
 * The resolution as a JSON document; release with [`repunit_string_free`].
 */
enum RepunitStatus repunit_resolution_to_json(const struct RepunitResolutionHandle *handle,
                                              char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void repunit_string_free(char *s);

/**
 * Runs the full verification pipeline. `passed_out` and `total_out`
 * (either may be null) receive the check counts. Returns `Ok` iff every
 * check passed, `VerificationFailed` otherwise.
 */
enum RepunitStatus repunit_verify(const struct RepunitSemigroupHandle *handle,
                                  uint64_t prime,
                                  size_t trials,
                                  size_t *passed_out,
                                  size_t *total_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REPUNIT_H */
