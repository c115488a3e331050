#ifndef RIESZ_CLIFFORD_H
#define RIESZ_CLIFFORD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RccStatus {
  RCC_STATUS_OK = 0,
  RCC_STATUS_NULL_POINTER = 1,
  RCC_STATUS_INVALID_ARGUMENT = 2,
  RCC_STATUS_DIMENSION_MISMATCH = 3,
  RCC_STATUS_NOT_HERMITIAN = 4,
  RCC_STATUS_PRECONDITION = 5,
  RCC_STATUS_PARSE = 6,
  RCC_STATUS_BUFFER_TOO_SMALL = 7,
  RCC_STATUS_INTERNAL = 8,
} RccStatus;

// Matrix-valued multivector `f(T)` with diagnostics.
typedef struct RccCalcResult RccCalcResult;

// Polynomial with Clifford coefficients in the `V_alpha` basis.
typedef struct RccHyperPolynomial RccHyperPolynomial;

// Tuple of self-adjoint matrices.
typedef struct RccOperatorTuple RccOperatorTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *rcc_version(void);

// Message for the last failed call on this thread, or null. Valid until
// the next call on the same thread.
const char *rcc_last_error_message(void);

// Builds a tuple from `m` matrices of size `d x d`, stored back to back.
//
// # Safety
// `data` must point to `2 m d^2` doubles and `out` must be writable.
enum RccStatus rcc_operator_tuple_new(size_t m,
                                      size_t d,
                                      const double *data,
                                      struct RccOperatorTuple **out);

// # Safety
// `tuple` must come from [`rcc_operator_tuple_new`] or be null.
void rcc_operator_tuple_free(struct RccOperatorTuple *tuple);

// Writes `m`, `d` and the bound `max_j ||T_j||_2`.
//
// # Safety
// Pointers must be valid; any output pointer may be null to skip it.
enum RccStatus rcc_operator_tuple_info(const struct RccOperatorTuple *tuple,
                                       size_t *m,
                                       size_t *d,
                                       double *bound);

// Weyl quantization of a polynomial such as `"x1^2 x2 - 0.5"`.
//
// # Safety
// `out` must hold `len >= 2 d^2` doubles.
enum RccStatus rcc_quantize(const struct RccOperatorTuple *tuple,
                            const char *poly,
                            double *out,
                            size_t len);

// Average over orderings of `T_{i_1} ... T_{i_k}`, with 1-based indices.
//
// # Safety
// `indices` must hold `k` entries and `out` must hold `len >= 2 d^2` doubles.
enum RccStatus rcc_symmetric_product(const struct RccOperatorTuple *tuple,
                                     const size_t *indices,
                                     size_t k,
                                     double *out,
                                     size_t len);

// Parses polynomial text over `n` variables; the monomial `x^alpha` is read
// as `V_alpha` with a scalar coefficient.
//
// # Safety
// `text_ptr` must be NUL-terminated and `out` writable.
enum RccStatus rcc_hyperpoly_parse(const char *text_ptr, size_t n, struct RccHyperPolynomial **out);

// # Safety
// `poly` must come from [`rcc_hyperpoly_parse`] or be null.
void rcc_hyperpoly_free(struct RccHyperPolynomial *poly);

// `f(T)` by substituting `V_alpha(T)`.
//
// # Safety
// Handles must be valid and `out` writable.
enum RccStatus rcc_calculus_taylor(const struct RccOperatorTuple *tuple,
                                   const struct RccHyperPolynomial *poly,
                                   struct RccCalcResult **out);

// `f(T)` by integrating the operator Cauchy kernel over a sphere.
// `radius <= 0` picks twice the spectral bound, `order == 0` picks 32.
//
// # Safety
// Handles must be valid and `out` writable.
enum RccStatus rcc_calculus_integral(const struct RccOperatorTuple *tuple,
                                     const struct RccHyperPolynomial *poly,
                                     double radius,
                                     size_t order,
                                     struct RccCalcResult **out);

// Number of non-zero blades in the result.
//
// # Safety
// `result` must be a valid handle and `count` writable.
enum RccStatus rcc_calc_result_blade_count(const struct RccCalcResult *result, size_t *count);

// The `k`-th blade (ascending bitmask order): its bitmask, bit `j-1` set for
// `e_j`, and its `d x d` matrix coefficient.
//
// # Safety
// `bits` must be writable and `out` must hold `len >= 2 d^2` doubles.
enum RccStatus rcc_calc_result_blade(const struct RccCalcResult *result,
                                     size_t k,
                                     uint32_t *bits,
                                     double *out,
                                     size_t len);

// Estimated truncation error of the result (zero for the Taylor route).
//
// # Safety
// `result` must be a valid handle and `error` writable.
enum RccStatus rcc_calc_result_truncation_error(const struct RccCalcResult *result, double *error);

// # Safety
// `result` must come from a calculus call or be null.
void rcc_calc_result_free(struct RccCalcResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIESZ_CLIFFORD_H */
