#ifndef FOURIER_POSITIVITY_H
#define FOURIER_POSITIVITY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FposStatus {
  FPOS_STATUS_OK = 0,
  FPOS_STATUS_NULL_POINTER = 1,
  FPOS_STATUS_INVALID_ARGUMENT = 2,
  FPOS_STATUS_DOMAIN = 3,
  FPOS_STATUS_WRONG_KIND = 4,
  FPOS_STATUS_DEGENERATE = 5,
  FPOS_STATUS_NON_FINITE = 6,
  FPOS_STATUS_OUT_OF_RANGE = 7,
  FPOS_STATUS_PARSE = 8,
  FPOS_STATUS_IO = 9,
  FPOS_STATUS_PANIC = 10,
} FposStatus;

typedef enum FposBasis {
  FPOS_BASIS_HERMITE1D = 0,
  FPOS_BASIS_LAGUERRE_RADIAL = 1,
} FposBasis;

typedef enum FposLabel {
  FPOS_LABEL_PP = 0,
  FPOS_LABEL_PN = 1,
} FposLabel;

typedef enum FposWitnessKind {
  FPOS_WITNESS_KIND_TOEPLITZ = 0,
  FPOS_WITNESS_KIND_POINTS = 1,
  FPOS_WITNESS_KIND_CHAR1D = 2,
  FPOS_WITNESS_KIND_CHAR2D = 3,
} FposWitnessKind;

/**
 * A labelled corpus.
 */
typedef struct FposCorpus FposCorpus;

/**
 * A normalized coefficient vector in one of the two bases.
 */
typedef struct FposFunction FposFunction;

/**
 * One detector verdict. `size` is the matrix order or point count (0 for
 * Poisson scans); unused `coords` are NaN.
 */
typedef struct FposVerdict {
  bool detected;
  enum FposWitnessKind witness;
  size_t size;
  double coords[3];
  double min_value;
  double threshold;
} FposVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fpos_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fpos_version(void);

/**
 * Normalizes `len` coefficients into a new function (5 for Hermite, 9 for
 * Laguerre).
 *
 * # Safety
 * `coeffs` must point to `len` readable doubles and `out` must be writable.
 */
enum FposStatus fpos_function_new(enum FposBasis kind,
                                  const double *coeffs,
                                  size_t len,
                                  struct FposFunction **out);

/**
 * One of `gaussian`, `hermite-pp`, `hermite-pn`, `laguerre-pp`, `laguerre-pn`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum FposStatus fpos_function_named(const char *name, struct FposFunction **out);

/**
 * # Safety
 * `f` must be NULL or a handle from this library not yet freed.
 */
void fpos_function_free(struct FposFunction *f);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FposStatus fpos_function_kind(const struct FposFunction *f, enum FposBasis *out);

/**
 * Copies up to `cap` normalized coefficients into `buf`; `len` receives the
 * full count.
 *
 * # Safety
 * `buf` must hold `cap` doubles (it may be NULL when `cap` is 0).
 */
enum FposStatus fpos_function_coeffs(const struct FposFunction *f,
                                     double *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * `ψ(x)`; `x` is the radius for radial functions.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FposStatus fpos_function_psi(const struct FposFunction *f, double x, double *out);

/**
 * `φ(s)`, the analytic transform.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FposStatus fpos_function_phi(const struct FposFunction *f, double s, double *out);

/**
 * Ground-truth label from the analytic `φ`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FposStatus fpos_function_classify(const struct FposFunction *f, enum FposLabel *out);

/**
 * Bochner test at the default grid. `size` is the Toeplitz order (1-D) or
 * the point count (radial, pool drawn from `pool_seed`).
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FposStatus fpos_detect_bochner(const struct FposFunction *f,
                                    size_t size,
                                    uint64_t pool_seed,
                                    struct FposVerdict *out);

/**
 * Characteristic-function scan at the default grid.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum FposStatus fpos_detect_poisson(const struct FposFunction *f, struct FposVerdict *out);

/**
 * Smallest eigenvalue of a symmetric row-major `order × order` matrix.
 *
 * # Safety
 * `matrix` must point to `order * order` readable doubles and `out` must be
 * writable.
 */
enum FposStatus fpos_min_eigenvalue(const double *matrix, size_t order, double *out);

/**
 * Samples `n` accepted functions from master seed `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FposStatus fpos_corpus_generate(enum FposBasis kind,
                                     size_t n,
                                     uint64_t seed,
                                     struct FposCorpus **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum FposStatus fpos_corpus_read(const char *path, struct FposCorpus **out);

/**
 * # Safety
 * `c` must be a live handle and `path` a NUL-terminated string.
 */
enum FposStatus fpos_corpus_write(const struct FposCorpus *c, const char *path);

/**
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum FposStatus fpos_corpus_len(const struct FposCorpus *c, size_t *out);

/**
 * Copies function `index` into a new handle; `label` may be NULL.
 *
 * # Safety
 * `c` must be a live handle, `out` writable, `label` NULL or writable.
 */
enum FposStatus fpos_corpus_get(const struct FposCorpus *c,
                                size_t index,
                                struct FposFunction **out,
                                enum FposLabel *label_out);

/**
 * # Safety
 * `c` must be NULL or a handle from this library not yet freed.
 */
void fpos_corpus_free(struct FposCorpus *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOURIER_POSITIVITY_H */
