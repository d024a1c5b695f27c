#ifndef AGC_H
#define AGC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define AGC_OK 0

#define AGC_ERR_NULL_POINTER 1

#define AGC_ERR_INVALID_UTF8 2

#define AGC_ERR_BUFFER_TOO_SMALL 3

#define AGC_ERR_PANIC 4

#define AGC_ERR_NOT_PRIME_POWER 10

#define AGC_ERR_UNSUPPORTED 11

#define AGC_ERR_DIVISION_BY_ZERO 12

#define AGC_ERR_INVALID_ELEMENT 13

#define AGC_ERR_DEGREE_TOO_LARGE 14

#define AGC_ERR_DEPENDENT_FORMS 15

#define AGC_ERR_SIZE_OUT_OF_RANGE 16

#define AGC_ERR_DIMENSION_MISMATCH 17

#define AGC_ERR_TOO_LARGE 18

#define AGC_ERR_ORDER_OUT_OF_RANGE 19

#define AGC_ERR_ORTHOGONALITY_VIOLATION 20

#define AGC_ERR_INVALID_WITNESS_PARAMS 21

#define AGC_ERR_SINGULAR_MATRIX 22

#define AGC_ERR_NOT_SQUARE 23

#define AGC_ERR_W_MAX_UNSUPPORTED 24

#define AGC_ERR_WORD_NOT_IN_CODE 25

#define AGC_ERR_RANK_TOO_LOW 26

#define AGC_ERR_INVALID_PARAMS 27

#define AGC_ERR_IO 28

#define AGC_ERR_VERIFICATION_FAILED 29

/**
 * Opaque handle to a linear code.
 */
typedef struct AgcCode AgcCode;

/**
 * Closed-form parameters; `min_weight_count` is meaningful only when
 * `has_min_weight_count` is nonzero.
 */
typedef struct AgcParams {
  uint64_t n;
  uint64_t k;
  uint64_t d;
  uint64_t min_weight_count;
  uint8_t has_min_weight_count;
} AgcParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread (empty if none).
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *agc_last_error_message(void);

/**
 * Builds AGC(ell, m; r) over F_q.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
int32_t agc_build_affine_grassmann(uint32_t ell,
                                   uint32_t m,
                                   uint32_t r,
                                   uint32_t q,
                                   struct AgcCode **out);

/**
 * Builds the Reed-Muller code RM(r, delta) over F_q.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
int32_t agc_build_reed_muller(uint32_t r, uint32_t delta, uint32_t q, struct AgcCode **out);

/**
 * Builds the explicit dual of an affine Grassmann code.
 *
 * # Safety
 * `code` must come from this library and not be freed; `out` must be writable.
 */
int32_t agc_build_dual(const struct AgcCode *code, struct AgcCode **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `code` must be null or a handle from this library not yet freed.
 */
void agc_code_free(struct AgcCode *code);

/**
 * Code length, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t agc_code_length(const struct AgcCode *code);

/**
 * Number of generator rows, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t agc_code_dimension(const struct AgcCode *code);

/**
 * Field size q, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint32_t agc_code_field_size(const struct AgcCode *code);

/**
 * Copies generator row `row` (element codes, one byte each) into `buf`.
 *
 * # Safety
 * `buf` must point to `buf_len` writable bytes.
 */
int32_t agc_code_row(const struct AgcCode *code, size_t row, uint8_t *buf, size_t buf_len);

/**
 * Minimum distance and number of minimum-weight codewords by full enumeration.
 *
 * # Safety
 * `d` and `count` must be writable.
 */
int32_t agc_min_distance(const struct AgcCode *code, uint64_t *d, uint64_t *count);

/**
 * Number of dual codewords of each weight `0..=w_max` (`w_max <= 4`),
 * written to `counts[0..=w_max]`.
 *
 * # Safety
 * `counts` must point to at least `w_max + 1` writable values.
 */
int32_t agc_dual_low_weight_counts(const struct AgcCode *code, uint32_t w_max, uint64_t *counts);

/**
 * Closed-form n, k, d (and the minimum-weight count at r = ell).
 *
 * # Safety
 * `out` must be writable.
 */
int32_t agc_theoretical_params(uint32_t ell,
                               uint32_t m,
                               uint32_t r,
                               uint32_t q,
                               struct AgcParams *out);

/**
 * Writes the generator matrix as text ("q n k" header, then one row per line).
 *
 * # Safety
 * `path` must be a NUL-terminated string.
 */
int32_t agc_write_generator(const struct AgcCode *code, const char *path);

/**
 * Writes `<stem>.alist` (and `<stem>.qval` when q > 2) for the generator matrix.
 *
 * # Safety
 * `stem` must be a NUL-terminated string.
 */
int32_t agc_write_alist(const struct AgcCode *code, const char *stem);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AGC_H */
