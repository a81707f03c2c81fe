#ifndef GMFINEQ_H
#define GMFINEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum GmfStatus {
  GMF_STATUS_OK = 0,
  GMF_STATUS_NULL_POINTER = 1,
  GMF_STATUS_INVALID_ARGUMENT = 2,
  GMF_STATUS_DIMENSION_MISMATCH = 3,
  GMF_STATUS_NOT_HERMITIAN = 4,
  GMF_STATUS_NOT_PSD = 5,
  GMF_STATUS_DEGREE_TOO_LARGE = 6,
  GMF_STATUS_NUMERICAL = 7,
  GMF_STATUS_REPRODUCTION_FAILED = 8,
  GMF_STATUS_BUFFER_TOO_SMALL = 9,
  GMF_STATUS_PANIC = 10,
} GmfStatus;

// Verdict of a slack evaluation.
typedef enum GmfVerdict {
  GMF_VERDICT_HOLDS = 0,
  GMF_VERDICT_VIOLATED = 1,
  GMF_VERDICT_EQUALITY = 2,
} GmfVerdict;

// Opaque square complex matrix.
typedef struct GmfMatrix GmfMatrix;

// Opaque generalized matrix function specification.
typedef struct GmfSpecHandle GmfSpecHandle;

// Real part of a GMF value and the size of the discarded imaginary part.
typedef struct GmfValue {
  double value;
  double imag_residue;
} GmfValue;

// lhs − rhs of an inequality with its tolerance and verdict.
typedef struct GmfSlack {
  double lhs;
  double rhs;
  double slack;
  double tolerance;
  enum GmfVerdict verdict;
} GmfSlack;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Length in bytes, including the terminator, of this thread's last error
// message; 1 when there is none.
size_t gmfineq_last_error_length(void);

// Copies this thread's last error message into `buf`.
//
// # Safety
// `buf` must point to at least `cap` writable bytes.
enum GmfStatus gmfineq_last_error_message(char *buf, size_t cap);

// Builds an n×n matrix from row-major real and imaginary parts; `im`
// may be null for a real matrix.
//
// # Safety
// `re` (and `im` if non-null) must point to n·n doubles; `out` must be
// writable.
enum GmfStatus gmfineq_matrix_new(size_t n,
                                  const double *re,
                                  const double *im,
                                  struct GmfMatrix **out);

// # Safety
// `m` must be null or a handle from [`gmfineq_matrix_new`] not yet freed.
void gmfineq_matrix_free(struct GmfMatrix *m);

// # Safety
// `m` must be null or a live matrix handle.
size_t gmfineq_matrix_dim(const struct GmfMatrix *m);

// Determinant on n×n matrices.
//
// # Safety
// `out` must be writable.
enum GmfStatus gmfineq_spec_det(size_t n, struct GmfSpecHandle **out);

// Permanent on n×n matrices.
//
// # Safety
// `out` must be writable.
enum GmfStatus gmfineq_spec_per(size_t n, struct GmfSpecHandle **out);

// Cyclic group C_n generated by the n-cycle, with character index k.
//
// # Safety
// `out` must be writable.
enum GmfStatus gmfineq_spec_cyclic(size_t n, size_t k, struct GmfSpecHandle **out);

// Group and character from permutation-character JSON:
// `{"n": .., "elements": [[..], ..], "character": [{"re": .., "im": ..}, ..]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum GmfStatus gmfineq_spec_from_json(const char *json, struct GmfSpecHandle **out);

// Product d_1(X_1)⋯d_k(X_k) of `count` non-product specs. The inputs are
// copied and remain owned by the caller.
//
// # Safety
// `specs` must point to `count` live spec handles; `out` must be writable.
enum GmfStatus gmfineq_spec_product(const struct GmfSpecHandle *const *specs,
                                    size_t count,
                                    struct GmfSpecHandle **out);

// # Safety
// `s` must be null or a live spec handle.
void gmfineq_spec_free(struct GmfSpecHandle *s);

// Matrix size the spec acts on (the sum of block sizes for products).
//
// # Safety
// `s` must be null or a live spec handle.
size_t gmfineq_spec_degree(const struct GmfSpecHandle *s);

// d(A) with the fastest engine for the spec.
//
// # Safety
// Handles must be live; `out` must be writable.
enum GmfStatus gmfineq_evaluate(const struct GmfSpecHandle *spec,
                                const struct GmfMatrix *m,
                                struct GmfValue *out);

// ⟨v, (⊗ⁿA) v⟩ for the spec's decomposable tensor v (degree ≤ 6).
//
// # Safety
// Handles must be live; `out` must be writable.
enum GmfStatus gmfineq_tensor_oracle(const struct GmfSpecHandle *spec,
                                     const struct GmfMatrix *m,
                                     struct GmfValue *out);

// d(A+B+C)^r + d(A)^r + d(B)^r + d(C)^r − d(A+B)^r − d(A+C)^r − d(B+C)^r
// for PSD A, B, C.
//
// # Safety
// Handles must be live; `out` must be writable.
enum GmfStatus gmfineq_slack_three_matrix(const struct GmfSpecHandle *spec,
                                          const struct GmfMatrix *a,
                                          const struct GmfMatrix *b,
                                          const struct GmfMatrix *c,
                                          double r,
                                          struct GmfSlack *out);

// Runs a named example ("eg2_2", "eg2_3", "finite_diff",
// "majorization_gap") and writes its reports as JSON lines into `buf`.
// `required` receives the needed size including the terminator, so a
// first call with a null buffer can size the second.
//
// # Safety
// `example` must be NUL-terminated; `buf` must hold `cap` bytes or be null;
// `required` may be null.
enum GmfStatus gmfineq_reproduce(const char *example, char *buf, size_t cap, size_t *required);

// Σ_{j=1}^m (−1)^{m−j} C(m, j) j^r.
double gmfineq_finite_difference(size_t m, double r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GMFINEQ_H */
