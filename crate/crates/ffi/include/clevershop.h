#ifndef CLEVERSHOP_H
#define CLEVERSHOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call. Codes 0 to 3 match the exit codes of the binary.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  /**
   * A solution was produced but costs more than the budget.
   */
  CS_STATUS_OVER_BUDGET = 1,
  /**
   * Malformed text, an invalid instance or an unmet solver precondition.
   */
  CS_STATUS_INVALID_INPUT = 2,
  /**
   * A solver cap was exceeded.
   */
  CS_STATUS_RESOURCE_LIMIT = 3,
  CS_STATUS_NULL_POINTER = 4,
  /**
   * Non UTF-8 text, an unknown algorithm or an out of range index.
   */
  CS_STATUS_INVALID_ARGUMENT = 5,
  /**
   * The library panicked.
   */
  CS_STATUS_INTERNAL = 6,
} CsStatus;

typedef enum CsAlgorithm {
  CS_ALGORITHM_ORACLE = 0,
  CS_ALGORITHM_SUBSET_DP = 1,
  CS_ALGORITHM_PRICE_DP = 2,
  CS_ALGORITHM_MATCHING2 = 3,
  CS_ALGORITHM_FSTAR = 4,
  CS_ALGORITHM_GREEDY = 5,
} CsAlgorithm;

/**
 * Opaque validated instance.
 */
typedef struct CsInstance CsInstance;

/**
 * Opaque solver result.
 */
typedef struct CsSolution CsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance in the `CLEVERSHOP 1` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum CsStatus cs_instance_parse(const char *text, struct CsInstance **out);

/**
 * # Safety
 * `instance` must come from [`cs_instance_parse`] and not be freed twice.
 */
void cs_instance_free(struct CsInstance *instance);

/**
 * Number of books, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t cs_instance_num_books(const struct CsInstance *instance);

/**
 * Number of shops, or 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t cs_instance_num_shops(const struct CsInstance *instance);

/**
 * Writes the canonical text form of `instance` to `*out`.
 *
 * # Safety
 * `instance` must be a live handle and `out` writable.
 */
enum CsStatus cs_instance_serialize(const struct CsInstance *instance, char **out);

/**
 * Solves `instance` with `algorithm`, a [`CsAlgorithm`] value, under the
 * default caps.
 *
 * The budget is `budget` when `has_budget` is true, else the instance's own.
 * A solution over budget is still written to `*out` and the call returns
 * [`CsStatus::OverBudget`].
 *
 * # Safety
 * `instance` must be a live handle and `out` writable.
 */
enum CsStatus cs_solve(const struct CsInstance *instance,
                       int32_t algorithm,
                       bool has_budget,
                       int64_t budget,
                       struct CsSolution **out);

/**
 * Writes the [`CsAlgorithm`] code of a command-line name, e.g. `subset-dp`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum CsStatus cs_algorithm_from_name(const char *name, int32_t *out);

/**
 * # Safety
 * `solution` must come from [`cs_solve`] and not be freed twice.
 */
void cs_solution_free(struct CsSolution *solution);

/**
 * # Safety
 * `solution` must be a live handle and `out` writable.
 */
enum CsStatus cs_solution_total_cost(const struct CsSolution *solution, int64_t *out);

/**
 * # Safety
 * `solution` must be a live handle and `out` writable.
 */
enum CsStatus cs_solution_total_discount(const struct CsSolution *solution, int64_t *out);

/**
 * Number of books in the assignment, or 0 for a null handle.
 *
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t cs_solution_num_books(const struct CsSolution *solution);

/**
 * Writes the 0-based shop index chosen for 0-based `book`.
 *
 * # Safety
 * `solution` must be a live handle and `out` writable.
 */
enum CsStatus cs_solution_shop_of(const struct CsSolution *solution, size_t book, size_t *out);

/**
 * Writes 1 if a budget applied and was met, 0 if it was exceeded and -1
 * if no budget applied.
 *
 * # Safety
 * `solution` must be a live handle and `out` writable.
 */
enum CsStatus cs_solution_within_budget(const struct CsSolution *solution, int32_t *out);

/**
 * Writes the solution in the `ASSIGN`/`COST` text format to `*out`.
 *
 * # Safety
 * `solution` must be a live handle and `out` writable.
 */
enum CsStatus cs_solution_serialize(const struct CsSolution *solution, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cs_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null after a success.
 *
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *cs_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLEVERSHOP_H */
