#ifndef DUALPOLY_H
#define DUALPOLY_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DpStatus {
  DP_STATUS_OK = 0,
  DP_STATUS_NULL_POINTER = 1,
  DP_STATUS_INVALID_UTF8 = 2,
  /**
   * Argument outside the supported domain, such as `n < 2` for OR.
   */
  DP_STATUS_DOMAIN = 3,
  /**
   * Malformed number or document.
   */
  DP_STATUS_PARSE = 4,
  /**
   * Well-formed input that fails a mathematical check.
   */
  DP_STATUS_REJECTED = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  DP_STATUS_INTERNAL = 6,
} DpStatus;

/**
 * Opaque OR certificate.
 */
typedef struct DpCertificate DpCertificate;

/**
 * Opaque symmetric polynomial, stored by its values at Hamming weights `0..=n`.
 */
typedef struct DpPoly DpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Owned by the
 * library and valid until the next call on the same thread.
 */
const char *dp_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dp_string_free(char *s);

/**
 * Builds and self-checks the OR certificate for `n >= 2` bits.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum DpStatus dp_or_certificate_new(size_t n, struct DpCertificate **out);

/**
 * # Safety
 * `cert` must be NULL or a handle from [`dp_or_certificate_new`].
 */
void dp_certificate_free(struct DpCertificate *cert);

/**
 * Pure high degree of the certificate, which is the proven degree bound.
 *
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum DpStatus dp_certificate_phd(const struct DpCertificate *cert, size_t *out);

/**
 * `‖q‖₁ / (q · OR)` as an exact `num/den` string.
 *
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum DpStatus dp_certificate_ratio(const struct DpCertificate *cert, char **out);

/**
 * The serialized certificate document.
 *
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum DpStatus dp_certificate_document(const struct DpCertificate *cert, char **out);

/**
 * Verifies a certificate or witness document. `eps` may be NULL to use the
 * document's own value. Sets `*accepted` to 1 or 0 and returns OK for any
 * well-formed document; malformed input gives [`DpStatus::Parse`].
 *
 * # Safety
 * `text` must be a NUL-terminated string, `eps` NULL or one, and `accepted`
 * writable.
 */
enum DpStatus dp_verify_document(const char *text,
                                 const char *eps,
                                 size_t brute_limit,
                                 int32_t *accepted);

/**
 * Polynomial from `len >= 2` exact rational strings, the values at Hamming
 * weights `0..len`.
 *
 * # Safety
 * `values` must point to `len` NUL-terminated strings and `out` be writable.
 */
enum DpStatus dp_poly_new(const char *const *values, size_t len, struct DpPoly **out);

/**
 * # Safety
 * `poly` must be NULL or a handle from [`dp_poly_new`].
 */
void dp_poly_free(struct DpPoly *poly);

/**
 * Smallest Fourier level present in the polynomial; fails on the zero polynomial.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum DpStatus dp_poly_pure_high_degree(const struct DpPoly *poly, size_t *out);

/**
 * `Σ C(n, k) |p(k)|` as a `num/den` string.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum DpStatus dp_poly_l1_norm(const struct DpPoly *poly, char **out);

/**
 * Exact eps-approximate degree of a named symmetric function (`or`,
 * `parity`, `constant`, `threshold-<t>`), solved by exact LP for `n <= 16`.
 *
 * # Safety
 * `func` and `eps` must be NUL-terminated strings and `out` writable.
 */
enum DpStatus dp_approx_degree(const char *func, size_t n, const char *eps, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALPOLY_H */
