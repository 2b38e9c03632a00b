#ifndef K2LAMBDA_H
#define K2LAMBDA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum K2lStatus {
  K2L_STATUS_OK = 0,
  K2L_STATUS_NULL_POINTER = 1,
  K2L_STATUS_INVALID_ARGUMENT = 2,
  K2L_STATUS_BUFFER_TOO_SMALL = 3,
  K2L_STATUS_OVERFLOW = 4,
  K2L_STATUS_NOT_WELL_DEFINED = 5,
  K2L_STATUS_DIMENSION_MISMATCH = 6,
  K2L_STATUS_INVALID_PARAMS = 7,
  K2L_STATUS_TOO_LARGE = 8,
  K2L_STATUS_NOT_NILPOTENT = 9,
  K2L_STATUS_NOT_SPLIT = 10,
  K2L_STATUS_CONFIG = 11,
  K2L_STATUS_PARSE = 12,
  K2L_STATUS_FAILED = 13,
} K2lStatus;

/**
 * A validated run configuration.
 */
typedef struct K2lConfig K2lConfig;

/**
 * A finitely presented abelian group.
 */
typedef struct K2lGroup K2lGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *k2l_last_error(void);

/**
 * The group with `ngens` generators and the `nrels` relation rows in `relations`
 * (row-major, `nrels * ngens` entries).
 *
 * # Safety
 * `relations` must hold `nrels * ngens` values; `out` must be writable.
 */
enum K2lStatus k2l_group_new(uintptr_t ngens,
                             const int64_t *relations,
                             uintptr_t nrels,
                             struct K2lGroup **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed; null is ignored.
 */
void k2l_group_free(struct K2lGroup *g);

/**
 * Writes the torsion invariant factors `d_1 | d_2 | ...` into `torsion`
 * (capacity `cap`), their count into `len` and the free rank into `free_rank`.
 * On `BufferTooSmall`, `len` holds the required capacity.
 *
 * # Safety
 * `g` must be a live handle; the output pointers must be valid as described.
 */
enum K2lStatus k2l_group_invariant_factors(const struct K2lGroup *g,
                                           int64_t *torsion,
                                           uintptr_t cap,
                                           uintptr_t *len,
                                           uintptr_t *free_rank);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum K2lStatus k2l_group_is_isomorphic(const struct K2lGroup *a,
                                       const struct K2lGroup *b,
                                       bool *out);

/**
 * Nonzero Smith diagonal entries of a `rows x cols` row-major matrix.
 *
 * # Safety
 * `data` must hold `rows * cols` values; `factors` has capacity `cap`; `len` is writable.
 */
enum K2lStatus k2l_smith_factors(uintptr_t rows,
                                 uintptr_t cols,
                                 const int64_t *data,
                                 int64_t *factors,
                                 uintptr_t cap,
                                 uintptr_t *len);

/**
 * Checks a `(p, e, m)` triple (prime `p`, `m >= e`, `p^e > 2`).
 */
enum K2lStatus k2l_params_check(uint32_t p, uint32_t e, uint32_t m);

/**
 * Relative `K_2` of `(Z/k)[x]/(x^n)` at the ideal `(x)`, from its generator
 * and relation presentation. Rings above `max_size` elements are refused.
 *
 * # Safety
 * `out` must be writable.
 */
enum K2lStatus k2l_ms_k2_truncated(uintptr_t n,
                                   int64_t k,
                                   uint64_t max_size,
                                   struct K2lGroup **out);

/**
 * Parses a TOML run configuration; a null `toml` gives the default.
 *
 * # Safety
 * `toml` must be null or a NUL-terminated string; `out` must be writable.
 */
enum K2lStatus k2l_config_new(const char *toml, struct K2lConfig **out);

/**
 * # Safety
 * `c` must come from [`k2l_config_new`] and not have been freed; null is ignored.
 */
void k2l_config_free(struct K2lConfig *c);

/**
 * Runs the configured suites. `failed` receives the number of failed checks and
 * `json` (if not null) the report, to be released with [`k2l_string_free`].
 *
 * # Safety
 * `c` must be a live handle; `failed` must be writable; `json` null or writable.
 */
enum K2lStatus k2l_verify(const struct K2lConfig *c, uintptr_t *failed, char **json);

/**
 * The JSON report for every (params, ring) case of the configuration.
 *
 * # Safety
 * `c` must be a live handle; `json` must be writable.
 */
enum K2lStatus k2l_report_json(const struct K2lConfig *c, char **json);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void k2l_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K2LAMBDA_H */
