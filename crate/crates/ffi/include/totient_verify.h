#ifndef TOTIENT_VERIFY_H
#define TOTIENT_VERIFY_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. On anything but `Ok` a message is
 * available from `tv_last_error` on the same thread.
 */
typedef enum TvStatus {
  TV_STATUS_OK = 0,
  TV_STATUS_NULL_POINTER = 1,
  TV_STATUS_INVALID_UTF8 = 2,
  TV_STATUS_INVALID_NUMBER = 3,
  TV_STATUS_INVALID_ARGUMENT = 4,
  /**
   * A factorization ran out of budget.
   */
  TV_STATUS_INCOMPLETE = 5,
  TV_STATUS_INTERNAL = 6,
} TvStatus;

typedef enum TvCase {
  /**
   * x^n + y^n
   */
  TV_CASE_SUM_POWER = 0,
  /**
   * z^n - x^n
   */
  TV_CASE_DIFF_POWER = 1,
  /**
   * (z^n - x^n)/(z - x)
   */
  TV_CASE_DIFF_QUOTIENT = 2,
  /**
   * (x^n + y^n)/(x + y)
   */
  TV_CASE_SUM_QUOTIENT = 3,
} TvCase;

typedef enum TvMode {
  TV_MODE_DIRECT = 0,
  TV_MODE_EXISTENCE = 1,
  TV_MODE_EXPLICIT = 2,
} TvMode;

typedef enum TvVerifyStatus {
  TV_VERIFY_STATUS_VERIFIED = 0,
  TV_VERIFY_STATUS_WITNESS_FOUND = 1,
  TV_VERIFY_STATUS_COUNTEREXAMPLE = 2,
  TV_VERIFY_STATUS_UNRESOLVED = 3,
  TV_VERIFY_STATUS_EXTRA_SCOPE = 4,
  TV_VERIFY_STATUS_EXCEPTIONAL = 5,
} TvVerifyStatus;

typedef enum TvFormat {
  TV_FORMAT_JSON = 0,
  TV_FORMAT_CSV = 1,
} TvFormat;

/**
 * Opaque factorization cache, optionally file backed.
 */
typedef struct TvCache TvCache;

/**
 * Opaque factorization handle.
 */
typedef struct TvFactorization TvFactorization;

/**
 * Opaque verification record.
 */
typedef struct TvRecord TvRecord;

/**
 * Opaque sweep report.
 */
typedef struct TvReport TvReport;

/**
 * Sweep parameters. `case_mask` has bit `i` set for `TvCase` value `i`.
 */
typedef struct TvSweepConfig {
  uint32_t case_mask;
  uint64_t n_min;
  uint64_t n_max;
  uint64_t value_max;
  enum TvMode mode;
  uint64_t budget;
  uint32_t parallelism;
  bool include_extra_scope;
} TvSweepConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void tv_string_free(char *s);

/**
 * Euler's totient of the decimal number `n`, written to `*out` as a decimal
 * string. Returns `Incomplete` when `n` does not factor within `budget`.
 *
 * # Safety
 * `n` must be a valid C string and `out` a valid pointer.
 */
enum TvStatus tv_euler_phi(const char *n, uint64_t budget, char **out);

/**
 * `Φ_k(a, b)` for `a > b >= 1`, as a decimal string.
 *
 * # Safety
 * `a` and `b` must be valid C strings and `out` a valid pointer.
 */
enum TvStatus tv_cyclotomic_value(uint64_t k, const char *a, const char *b, char **out);

/**
 * Whether `y/x` has order exactly `2n` modulo `x^n + y^n`. Needs coprime
 * `1 <= x < y`.
 *
 * # Safety
 * `x` and `y` must be valid C strings and `holds` a valid pointer.
 */
enum TvStatus tv_order_check(const char *x, const char *y, uint64_t n, bool *holds);

/**
 * Message describing the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *tv_last_error(void);

/**
 * Factors the decimal number `n` with at most `budget` rho iterations per
 * composite. Budget exhaustion is not an error; check
 * `tv_factorization_is_complete`.
 *
 * # Safety
 * `n` must be a valid C string and `out` a valid pointer.
 */
enum TvStatus tv_factorize(const char *n, uint64_t budget, struct TvFactorization **out);

/**
 * # Safety
 * `f` must be a live handle from `tv_factorize`.
 */
bool tv_factorization_is_complete(const struct TvFactorization *f);

/**
 * Number of distinct primes found.
 *
 * # Safety
 * `f` must be a live handle from `tv_factorize`.
 */
size_t tv_factorization_len(const struct TvFactorization *f);

/**
 * The `index`-th prime power, primes in increasing order.
 *
 * # Safety
 * `f` must be a live handle; `prime` and `exponent` valid pointers.
 */
enum TvStatus tv_factorization_factor(const struct TvFactorization *f,
                                      size_t index,
                                      char **prime,
                                      uint32_t *exponent);

/**
 * Unsplit cofactor (`"1"` when complete). Returns NULL for a NULL handle.
 *
 * # Safety
 * `f` must be a live handle from `tv_factorize` or NULL.
 */
char *tv_factorization_cofactor(const struct TvFactorization *f);

/**
 * Human-readable form, e.g. `"23 * 89"`.
 *
 * # Safety
 * `f` must be a live handle from `tv_factorize` or NULL.
 */
char *tv_factorization_to_string(const struct TvFactorization *f);

/**
 * # Safety
 * `f` must come from `tv_factorize` and not be used afterwards.
 */
void tv_factorization_free(struct TvFactorization *f);

/**
 * Opens a cache backed by the file at `path`, or an in-memory cache when
 * `path` is NULL. Never fails: unreadable or unwritable files degrade to
 * memory-only operation.
 *
 * # Safety
 * `path` must be a valid C string or NULL.
 */
struct TvCache *tv_cache_open(const char *path);

/**
 * Number of cached factorizations.
 *
 * # Safety
 * `cache` must be a live handle or NULL.
 */
size_t tv_cache_len(const struct TvCache *cache);

/**
 * Writes pending entries to disk and releases the cache.
 *
 * # Safety
 * `cache` must come from `tv_cache_open` and not be used afterwards.
 */
void tv_cache_free(struct TvCache *cache);

/**
 * Verifies one instance. `first` is x; `second` is y for the sum cases and
 * z for the difference cases. `cache` may be NULL.
 *
 * # Safety
 * String arguments must be valid C strings, `cache` a live handle or NULL,
 * `out` a valid pointer.
 */
enum TvStatus tv_verify(enum TvCase case_,
                        const char *first,
                        const char *second,
                        uint64_t n,
                        enum TvMode mode,
                        uint64_t budget,
                        const struct TvCache *cache,
                        struct TvRecord **out);

/**
 * # Safety
 * `r` must be a live record handle.
 */
enum TvVerifyStatus tv_record_status(const struct TvRecord *r);

/**
 * Witness prime as a decimal string, or NULL when the record has none.
 *
 * # Safety
 * `r` must be a live record handle or NULL.
 */
char *tv_record_witness(const struct TvRecord *r);

/**
 * φ(N) as a decimal string, or NULL when it was not computed.
 *
 * # Safety
 * `r` must be a live record handle or NULL.
 */
char *tv_record_phi(const struct TvRecord *r);

/**
 * The full record as JSON.
 *
 * # Safety
 * `r` must be a live record handle or NULL.
 */
char *tv_record_json(const struct TvRecord *r);

/**
 * # Safety
 * `r` must come from `tv_verify` and not be used afterwards.
 */
void tv_record_free(struct TvRecord *r);

/**
 * Runs a grid sweep. `cache` may be NULL for a throwaway in-memory cache.
 *
 * # Safety
 * `config` must point to a valid struct, `cache` be a live handle or NULL,
 * `out` a valid pointer.
 */
enum TvStatus tv_sweep(const struct TvSweepConfig *config,
                       const struct TvCache *cache,
                       struct TvReport **out);

/**
 * Number of records in the report.
 *
 * # Safety
 * `r` must be a live report handle or NULL.
 */
size_t tv_report_len(const struct TvReport *r);

/**
 * Number of records with the given status.
 *
 * # Safety
 * `r` must be a live report handle or NULL.
 */
size_t tv_report_count(const struct TvReport *r, enum TvVerifyStatus status);

/**
 * Process exit code the CLI would use for this report: 0 all good,
 * 1 counterexample, 2 unresolved.
 *
 * # Safety
 * `r` must be a live report handle.
 */
int32_t tv_report_exit_code(const struct TvReport *r);

/**
 * Serializes the report as JSON (summary) or CSV (one row per record).
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum TvStatus tv_report_emit(const struct TvReport *r, enum TvFormat format, char **out);

/**
 * # Safety
 * `r` must come from `tv_sweep` and not be used afterwards.
 */
void tv_report_free(struct TvReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOTIENT_VERIFY_H */
