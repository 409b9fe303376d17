/* C interface for the permgrid permutation-class library. */

#ifndef PERMGRID_H
#define PERMGRID_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every FFI entry point.
 */
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_ARGUMENT = 1,
  PG_STATUS_INVALID_UTF8 = 2,
  PG_STATUS_PARSE_ERROR = 3,
  PG_STATUS_INVALID_PERMUTATION = 4,
  PG_STATUS_INVALID_ARGUMENT = 5,
  PG_STATUS_BUDGET_EXCEEDED = 6,
  PG_STATUS_INTERNAL_ERROR = 7,
} PgStatus;

/**
 * An opaque permutation class: a parsed expression compiled against its own
 * membership cache. Create with `pg_class_parse`, release with
 * `pg_class_free`.
 */
typedef struct PgClass PgClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or NULL if none. The
 * pointer stays valid until the next failing call on the same thread; do
 * not free it.
 */
const char *pg_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `pg_*` function (or NULL),
 * and must not be used afterwards.
 */
void pg_string_free(char *s);

/**
 * Parse a class expression (e.g. "merge(Av(21),Av(12))") into a handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be a valid
 * pointer.
 */
enum PgStatus pg_class_parse(const char *text, struct PgClass **out);

/**
 * Release a class handle.
 *
 * # Safety
 * `class` must come from `pg_class_parse` (or be NULL) and must not be used
 * afterwards.
 */
void pg_class_free(struct PgClass *class_);

/**
 * The canonical printed form of a class. The result must be freed with
 * `pg_string_free`.
 *
 * # Safety
 * `class` must be a live handle; `out` must be a valid pointer.
 */
enum PgStatus pg_class_canonical(const struct PgClass *class_, char **out);

/**
 * Decide membership of a permutation given in textual form ("32514", or
 * comma-separated for lengths above nine; the empty string is the empty
 * permutation). A `budget` of 0 selects the default node budget.
 *
 * # Safety
 * `class` must be a live handle; `perm` a valid string; `out` a valid
 * pointer.
 */
enum PgStatus pg_class_member(const struct PgClass *class_,
                              const char *perm,
                              uint64_t budget,
                              bool *out);

/**
 * Count the class by length and return the JSON form
 * {"class": ..., "counts": ["1", ...], "max_len": n}. The result must be
 * freed with `pg_string_free`.
 *
 * # Safety
 * `class` must be a live handle; `out` a valid pointer.
 */
enum PgStatus pg_class_count_json(const struct PgClass *class_,
                                  uint32_t max_len,
                                  uint64_t budget,
                                  char **out);

/**
 * Minimal non-members of the class up to `max_len`, as a JSON array of
 * permutation strings. The result must be freed with `pg_string_free`.
 *
 * # Safety
 * `class` must be a live handle; `out` a valid pointer.
 */
enum PgStatus pg_class_basis_json(const struct PgClass *class_,
                                  uint32_t max_len,
                                  uint64_t budget,
                                  char **out);

/**
 * Decide merge membership of `perm` in left ⊙ right. When `witness_out` is
 * non-NULL it receives the witness coloring ("RBB...", index-aligned with
 * the host; empty when not a member), to be freed with `pg_string_free`.
 *
 * # Safety
 * `left` and `right` must be live handles; `perm` a valid string; `out` a
 * valid pointer; `witness_out` NULL or a valid pointer.
 */
enum PgStatus pg_merge_member(const struct PgClass *left,
                              const struct PgClass *right,
                              const char *perm,
                              uint64_t budget,
                              bool *out,
                              char **witness_out);

/**
 * The merge growth-rate bound (√gr_c + √gr_d)².
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PgStatus pg_merge_gr_bound(double gr_c, double gr_d, double *out);

/**
 * Growth rate of any t-step staircase with the given cell growth rates.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PgStatus pg_staircase_gr(double gr_c, double gr_d, uint32_t steps, double *out);

/**
 * Eigenvalues of the dim×dim tridiagonal Toeplitz matrix, written in
 * descending order to `out`.
 *
 * # Safety
 * `out` must point to at least `dim` writable doubles.
 */
enum PgStatus pg_toeplitz_eigenvalues(double sub,
                                      double diag,
                                      double sup,
                                      uint32_t dim,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMGRID_H */
