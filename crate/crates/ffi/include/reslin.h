#ifndef RESLIN_H
#define RESLIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

typedef enum ReslinStatus {
  RESLIN_STATUS_OK = 0,
  /*
   The checked property fails or the proof is rejected.
   */
  RESLIN_STATUS_FAILS = 1,
  RESLIN_STATUS_NULL_POINTER = 2,
  RESLIN_STATUS_INVALID_UTF8 = 3,
  RESLIN_STATUS_PARSE = 4,
  RESLIN_STATUS_INVALID_ARGUMENT = 5,
  RESLIN_STATUS_BUDGET_EXCEEDED = 6,
  RESLIN_STATUS_LIMIT = 7,
  RESLIN_STATUS_INTERNAL = 8,
} ReslinStatus;

/*
 Opaque formula handle.
 */
typedef struct ReslinFormula ReslinFormula;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Owned by the
 library.
 */
const char *reslin_last_error(void);

/*
 Library version as a static string.
 */
const char *reslin_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library.
 */
void reslin_string_free(char *s);

/*
 Parses XLCNF text.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ReslinStatus reslin_formula_parse(const char *text, struct ReslinFormula **out);

/*
 # Safety
 `out` must be writable.
 */
enum ReslinStatus reslin_formula_php(size_t pigeons, size_t holes, struct ReslinFormula **out);

/*
 # Safety
 `out` must be writable.
 */
enum ReslinStatus reslin_formula_ordering(size_t n, struct ReslinFormula **out);

/*
 # Safety
 `out` must be writable.
 */
enum ReslinStatus reslin_formula_dlo(size_t n, struct ReslinFormula **out);

/*
 # Safety
 `f` must be null or a handle from this library, not yet freed.
 */
void reslin_formula_free(struct ReslinFormula *f);

/*
 Variable count, or 0 for a null handle.

 # Safety
 `f` must be null or a live handle.
 */
size_t reslin_formula_nvars(const struct ReslinFormula *f);

/*
 Clause count, or 0 for a null handle.

 # Safety
 `f` must be null or a live handle.
 */
size_t reslin_formula_clauses(const struct ReslinFormula *f);

/*
 Canonical XLCNF text; free with `reslin_string_free`.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum ReslinStatus reslin_formula_to_text(const struct ReslinFormula *f, char **out);

/*
 Checks `m`-extensibility with respect to the clauses labelled `label`
 (an empty label selects no clauses). Returns `RESLIN_STATUS_FAILS` when the
 property fails.

 # Safety
 `f` must be a live handle and `label` a NUL-terminated string.
 */
enum ReslinStatus reslin_check_extensibility(const struct ReslinFormula *f,
                                             const char *label,
                                             size_t m,
                                             uint64_t *systems_checked);

/*
 Verifies a tree-like proof in XLP. On rejection returns `RESLIN_STATUS_FAILS`
 with the diagnostic naming the first invalid node.

 # Safety
 `f` must be a live handle, `xlp` a NUL-terminated string; `size` and
 `width` may be null.
 */
enum ReslinStatus reslin_verify_tree_proof(const struct ReslinFormula *f,
                                           const char *xlp,
                                           size_t *size,
                                           size_t *width);

/*
 Exact width up to `kmax`; `RESLIN_STATUS_FAILS` when the width exceeds `kmax`.

 # Safety
 `f` must be a live handle; `width` must be writable.
 */
enum ReslinStatus reslin_exact_width(const struct ReslinFormula *f, size_t kmax, size_t *width);

/*
 Size of a minimal linear splitting tree.

 # Safety
 `f` must be a live handle; `size` must be writable.
 */
enum ReslinStatus reslin_min_split_tree(const struct ReslinFormula *f,
                                        uint64_t budget,
                                        size_t *size);

/*
 Plays `games` games of the extensibility Delayer for the clauses labelled
 `label` against random provers seeded `seed, seed+1, ...` and stores the
 fewest coins earned.

 # Safety
 `f` must be a live handle, `label` a NUL-terminated string and
 `min_coins` writable.
 */
enum ReslinStatus reslin_random_games(const struct ReslinFormula *f,
                                      const char *label,
                                      uint64_t seed,
                                      uint64_t games,
                                      size_t *min_coins);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESLIN_H */
