#ifndef DGB_H
#define DGB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DgbBasisStatus {
  DGB_BASIS_STATUS_COMPLETE = 0,
  DGB_BASIS_STATUS_COMPLETE_UP_TO_ORDER = 1,
  DGB_BASIS_STATUS_BUDGET_EXHAUSTED = 2,
} DgbBasisStatus;

typedef enum DgbMode {
  DGB_MODE_PLAIN = 0,
  DGB_MODE_TRUNCATED = 1,
  DGB_MODE_ADAPTIVE = 2,
} DgbMode;

/**
 * Result codes.
 */
typedef enum DgbStatus {
  DGB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DGB_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DGB_STATUS_INVALID_UTF8 = 2,
  /**
   * The input text could not be parsed.
   */
  DGB_STATUS_PARSE_ERROR = 3,
  /**
   * The library rejected the request.
   */
  DGB_STATUS_INVALID_INPUT = 4,
  /**
   * An index was out of range.
   */
  DGB_STATUS_OUT_OF_RANGE = 5,
  /**
   * An internal error; the handle arguments are left untouched.
   */
  DGB_STATUS_PANIC = 6,
} DgbStatus;

/**
 * The result of a completion run.
 */
typedef struct DgbBasis DgbBasis;

/**
 * A parsed problem: ring and generators.
 */
typedef struct DgbProblem DgbProblem;

/**
 * Options for [`dgb_compute`]. Start from [`dgb_options_default`].
 */
typedef struct DgbOptions {
  enum DgbMode mode;
  /**
   * Order bound for `Truncated`; must be non-negative.
   */
  int64_t truncate;
  bool chain_criterion;
  uint64_t pair_budget;
  uint64_t order_cap;
  bool minimal;
  bool interreduce;
} DgbOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *dgb_last_error(void);

/**
 * Library version as a static string.
 */
const char *dgb_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void dgb_string_free(char *s);

struct DgbOptions dgb_options_default(void);

/**
 * Parse a problem file with a `ring` and an `ideal` block.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum DgbStatus dgb_problem_parse(const char *text, struct DgbProblem **out);

/**
 * # Safety
 * `p` must be null or a handle from [`dgb_problem_parse`].
 */
void dgb_problem_free(struct DgbProblem *p);

/**
 * Number of generators in the problem, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live problem handle.
 */
size_t dgb_problem_generator_count(const struct DgbProblem *p);

/**
 * Complete the generators of `problem`. `opts` may be null for defaults.
 *
 * # Safety
 * `problem` must be a live handle, `opts` null or valid, `out` valid.
 */
enum DgbStatus dgb_compute(const struct DgbProblem *problem,
                           const struct DgbOptions *opts,
                           struct DgbBasis **out);

/**
 * # Safety
 * `b` must be null or a handle from [`dgb_compute`].
 */
void dgb_basis_free(struct DgbBasis *b);

/**
 * Status of a run. `order` receives the truncation order for
 * `CompleteUpToOrder` and may be null.
 *
 * # Safety
 * `b` must be a live handle.
 */
enum DgbBasisStatus dgb_basis_status(const struct DgbBasis *b, uint64_t *order);

/**
 * # Safety
 * `b` must be null or a live handle.
 */
size_t dgb_basis_len(const struct DgbBasis *b);

/**
 * Element `i` in the problem's text syntax.
 *
 * # Safety
 * `b` must be a live handle and `out` valid.
 */
enum DgbStatus dgb_basis_element(const struct DgbBasis *b, size_t i, char **out);

/**
 * The basis as a complete problem file that parses back.
 *
 * # Safety
 * `b` must be a live handle and `out` valid.
 */
enum DgbStatus dgb_basis_serialize(const struct DgbBasis *b, char **out);

/**
 * The JSON run report.
 *
 * # Safety
 * `b` must be a live handle and `out` valid.
 */
enum DgbStatus dgb_basis_report_json(const struct DgbBasis *b, char **out);

/**
 * Check whether the generators of `problem` already form a Gröbner
 * Σ-basis.
 *
 * # Safety
 * `problem` must be a live handle and `is_basis` valid.
 */
enum DgbStatus dgb_verify(const struct DgbProblem *problem, bool *is_basis);

/**
 * Fully reduce `poly` modulo the generators of `problem`.
 *
 * # Safety
 * `problem` must be a live handle, `poly` a nul-terminated string and
 * `out` valid.
 */
enum DgbStatus dgb_reduce(const struct DgbProblem *problem, const char *poly, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DGB_H */
