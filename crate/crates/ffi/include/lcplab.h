#ifndef LCPLAB_H
#define LCPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdint.h>
#include <stddef.h>

// Result code of every call.
typedef enum LcplabStatus {
  LCPLAB_STATUS_OK = 0,
  LCPLAB_STATUS_NULL_POINTER = 1,
  // Text argument is not valid UTF-8.
  LCPLAB_STATUS_INVALID_UTF8 = 2,
  LCPLAB_STATUS_INVALID_INPUT = 3,
  LCPLAB_STATUS_DIMENSION = 4,
  LCPLAB_STATUS_SINGULAR = 5,
  LCPLAB_STATUS_RANGE = 6,
  LCPLAB_STATUS_PRECONDITION = 7,
  LCPLAB_STATUS_UNKNOWN_SUITE = 8,
  LCPLAB_STATUS_INTERNAL = 9,
  // A Rust panic was caught at the boundary.
  LCPLAB_STATUS_PANIC = 10,
} LcplabStatus;

// A hidden-Z certificate `(X, Y, r, s)`.
typedef struct LcplabCertificate LcplabCertificate;

// An LCP instance `(q, A)` with the certificate embedded in its file, if any.
typedef struct LcplabInstance LcplabInstance;

// A square or rectangular exact rational matrix.
typedef struct LcplabMatrix LcplabMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next lcplab call on the same thread.
const char *lcplab_last_error(void);

// Releases a string returned through an `out` parameter.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void lcplab_string_free(char *s);

// Parses a matrix file (`{"rows": ...}`) or the `A` of an instance file.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LcplabStatus lcplab_matrix_from_json(const char *json, struct LcplabMatrix **out);

// # Safety
// `m` must be NULL or a live handle from this library.
void lcplab_matrix_free(struct LcplabMatrix *m);

// Writes `{"rows": ...}` with every entry as an exact rational string.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum LcplabStatus lcplab_matrix_to_json(const struct LcplabMatrix *m, char **out);

// Exact determinant as a JSON string such as `"-3/2"`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum LcplabStatus lcplab_matrix_det(const struct LcplabMatrix *m, char **out);

// Value of the matrix game with optimal strategies:
// `{"value", "sign", "x_star", "y_star"}`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum LcplabStatus lcplab_game_value(const struct LcplabMatrix *m, char **out);

// Parses `{"X", "Y", "r", "s"}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LcplabStatus lcplab_certificate_from_json(const char *json, struct LcplabCertificate **out);

// # Safety
// `c` must be NULL or a live handle from this library.
void lcplab_certificate_free(struct LcplabCertificate *c);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum LcplabStatus lcplab_certificate_to_json(const struct LcplabCertificate *c, char **out);

// Searches for a hidden-Z certificate. On success `*out` is a new handle, or
// NULL when none was found (which does not rule one out).
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum LcplabStatus lcplab_certificate_find(const struct LcplabMatrix *m,
                                          struct LcplabCertificate **out);

// Checks a certificate exactly: `{"valid", "combination", "violations"}`.
//
// # Safety
// `m` and `c` must be live handles; `out` must be writable.
enum LcplabStatus lcplab_certificate_verify(const struct LcplabMatrix *m,
                                            const struct LcplabCertificate *c,
                                            char **out);

// Two-step P/P₀ certification. `c` may be NULL, in which case the verdict is
// conditional on the matrix being hidden Z. `epsilon` and `delta` are
// rational literals; NULL selects 1.
//
// # Safety
// `m` must be a live handle, `c` NULL or live, strings NULL or
// NUL-terminated; `out` must be writable.
enum LcplabStatus lcplab_classify(const struct LcplabMatrix *m,
                                  const struct LcplabCertificate *c,
                                  const char *epsilon,
                                  const char *delta,
                                  char **out);

// Parses an instance file; `q` is required.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LcplabStatus lcplab_instance_from_json(const char *json, struct LcplabInstance **out);

// # Safety
// `inst` must be NULL or a live handle from this library.
void lcplab_instance_free(struct LcplabInstance *inst);

// Solves the LCP with `method` (`lemke`, `crisscross`, `lp`, `enumerate`).
// The LP method uses the instance's embedded certificate. Writes
// `{"method", "status", "pivots", "z"?, "w"?, "degenerate"?, "objective"?}`;
// a non-`Solved` status is still `LCPLAB_STATUS_OK`.
//
// # Safety
// `inst` must be a live handle, `method` NUL-terminated; `out` writable.
enum LcplabStatus lcplab_solve(const struct LcplabInstance *inst, const char *method, char **out);

// Runs a registered property suite and writes its report. `jobs` = 0 uses
// the default thread count.
//
// # Safety
// `id` must be NUL-terminated; `out` must be writable.
enum LcplabStatus lcplab_suite_run(const char *id,
                                   uintptr_t trials,
                                   uintptr_t n_max,
                                   uint64_t seed,
                                   uintptr_t jobs,
                                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCPLAB_H */
