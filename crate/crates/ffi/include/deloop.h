#ifndef DELOOP_H
#define DELOOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define DL_IN_IPLUS 1

#define DL_IN_IMINUS 2

#define DL_IN_I0 4

typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_CHECK_FAILED = 1,
  DL_STATUS_INVALID_INPUT = 2,
  DL_STATUS_BUDGET_EXCEEDED = 3,
  DL_STATUS_NULL_POINTER = 4,
  DL_STATUS_INTERNAL = 5,
} DlStatus;

// Finite-dimensional algebra.
typedef struct DlAlgebra DlAlgebra;

// Banded operator over an algebra.
typedef struct DlOperator DlOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or NULL. Owned by the
// library; valid until the next failing call on the same thread.
const char *dl_last_error(void);

// # Safety
// `s` must come from this library, or be NULL.
void dl_string_free(char *s);

// Algebra from a label such as `k`, `k[e]/(e^2)`, `M_2(k)`.
//
// # Safety
// `label` must be a NUL-terminated string and `out` writable.
enum DlStatus dl_algebra_from_label(const char *label, struct DlAlgebra **out);

// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum DlStatus dl_algebra_from_json(const char *json, struct DlAlgebra **out);

// `M_n(a)`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_algebra_matrix(const struct DlAlgebra *a, size_t n, struct DlAlgebra **out);

// Dimension of `a`, or 0 for NULL.
//
// # Safety
// `a` must be a live handle or NULL.
size_t dl_algebra_dim(const struct DlAlgebra *a);

// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_algebra_to_json(const struct DlAlgebra *a, char **out);

// # Safety
// `a` must come from this library, or be NULL. Frees it.
void dl_algebra_free(struct DlAlgebra *a);

// `HH_n(a)` for `n <= cap` as a JSON report.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_hochschild_homology(const struct DlAlgebra *a,
                                     size_t cap,
                                     size_t budget,
                                     char **out);

// `HC_n(a)` for `n <= cap` as a JSON report.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_cyclic_homology(const struct DlAlgebra *a, size_t cap, size_t budget, char **out);

// `H_n(gl_n(a))`; with `primitive` nonzero the report carries `prim_dims`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_gl_homology(const struct DlAlgebra *a,
                             size_t n,
                             size_t cap,
                             size_t budget,
                             bool primitive,
                             char **out);

// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum DlStatus dl_operator_from_json(const char *json, struct DlOperator **out);

// `T^k` over `a`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_operator_shift(const struct DlAlgebra *a, int64_t k, struct DlOperator **out);

// The projection `P` onto nonnegative indices over `a`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum DlStatus dl_operator_projection(const struct DlAlgebra *a, struct DlOperator **out);

// # Safety
// `op` must be a live handle and `out` writable.
enum DlStatus dl_operator_to_json(const struct DlOperator *op, char **out);

// # Safety
// `x` and `y` must be live handles and `out` writable.
enum DlStatus dl_operator_mul(const struct DlOperator *x,
                              const struct DlOperator *y,
                              struct DlOperator **out);

// # Safety
// `x` and `y` must be live handles and `out` writable.
enum DlStatus dl_operator_add(const struct DlOperator *x,
                              const struct DlOperator *y,
                              struct DlOperator **out);

// # Safety
// `op` must come from this library, or be NULL. Frees it.
void dl_operator_free(struct DlOperator *op);

// Ideal membership as a bit set of `DL_IN_*` flags.
//
// # Safety
// `op` must be a live handle and `out` writable.
enum DlStatus dl_operator_membership(const struct DlOperator *op, uint32_t *out);

// `c(x, y)` in `R/[R,R]` as a JSON array of rational strings.
//
// # Safety
// `x` and `y` must be live handles and `out` writable.
enum DlStatus dl_cocycle(const struct DlOperator *x, const struct DlOperator *y, char **out);

// Lattice witnesses. `*unbounded` is set when a witness is `Everything`,
// in which case the matching index is left untouched.
//
// # Safety
// `op` must be a live handle and all out-pointers writable.
enum DlStatus dl_lattice_witnesses(const struct DlOperator *op,
                                   int64_t n,
                                   int64_t m,
                                   int64_t *forward,
                                   bool *forward_unbounded,
                                   int64_t *backward,
                                   bool *backward_unbounded);

// Full acceptance run as a JSON report. Returns `CheckFailed` if any entry
// fails, `BudgetExceeded` if entries were skipped for budget.
//
// # Safety
// `out` must be writable.
enum DlStatus dl_verify(uint64_t seed, size_t budget, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELOOP_H */
