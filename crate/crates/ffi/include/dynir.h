#ifndef DYNIR_H
#define DYNIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum DynirStatus {
  DYNIR_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  DYNIR_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DYNIR_STATUS_INVALID_UTF8 = 2,
  /**
   * A polynomial or constant could not be parsed.
   */
  DYNIR_STATUS_PARSE = 3,
  /**
   * The field or an argument violates a precondition.
   */
  DYNIR_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The input is outside the domain of the requested procedure.
   */
  DYNIR_STATUS_UNSUPPORTED = 5,
  /**
   * Internal failure (a caught panic).
   */
  DYNIR_STATUS_INTERNAL = 6,
} DynirStatus;

/**
 * Outcome kind of a classification.
 */
typedef enum DynirVerdictKind {
  /**
   * Every iterate is irreducible.
   */
  DYNIR_VERDICT_KIND_PROVED = 0,
  /**
   * `iterate` is the least reducible iterate.
   */
  DYNIR_VERDICT_KIND_REDUCIBLE = 1,
  /**
   * Iterates `1..=iterate` are irreducible; nothing is claimed beyond.
   */
  DYNIR_VERDICT_KIND_IRREDUCIBLE_THROUGH = 2,
} DynirVerdictKind;

/**
 * Opaque finite field `F_{p^s}`.
 */
typedef struct DynirField DynirField;

/**
 * Opaque polynomial over a [`DynirField`].
 */
typedef struct DynirPoly DynirPoly;

/**
 * Verdict summary; the full evidence is available as JSON.
 */
typedef struct DynirVerdict {
  enum DynirVerdictKind kind;
  /**
   * Iterate carried by the verdict, 0 when none.
   */
  uint32_t iterate;
} DynirVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dynir_version(void);

/**
 * Static description of a status code.
 */
const char *dynir_status_message(enum DynirStatus status);

/**
 * Create `F_{p^s}`; `p` must be a prime below 2^32 and `s >= 1`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DynirStatus dynir_field_new(uint64_t p, uint32_t s, struct DynirField **out);

/**
 * Release a field handle; NULL is ignored.
 *
 * # Safety
 * `field` must be NULL or a handle from [`dynir_field_new`] not yet freed.
 */
void dynir_field_free(struct DynirField *field);

/**
 * Parse a polynomial such as `"x^3+6x+2"` over `field`.
 *
 * # Safety
 * `field` must be a live handle, `src` a NUL-terminated string, `out` valid
 * for writes.
 */
enum DynirStatus dynir_poly_parse(const struct DynirField *field,
                                  const char *src,
                                  struct DynirPoly **out);

/**
 * Release a polynomial handle; NULL is ignored.
 *
 * # Safety
 * `poly` must be NULL or a handle from [`dynir_poly_parse`] not yet freed.
 */
void dynir_poly_free(struct DynirPoly *poly);

/**
 * Degree of the polynomial, or -1 for the zero polynomial.
 *
 * # Safety
 * `poly` must be a live handle.
 */
int64_t dynir_poly_degree(const struct DynirPoly *poly);

/**
 * Canonical rendering of the polynomial; free with [`dynir_string_free`].
 *
 * # Safety
 * `poly` must be a live handle and `out` valid for writes.
 */
enum DynirStatus dynir_poly_to_string(const struct DynirPoly *poly, char **out);

/**
 * Decide dynamical irreducibility of `poly` (or of the pair `(poly, beta)`
 * when `beta` is a non-NULL constant such as `"3"`).
 *
 * `n_max` bounds levels/iterates (10 is typical), `oracle_max` bounds the
 * factorization cross-check, `seed` drives randomized factoring. On success
 * `verdict` receives the summary and, when `json` is non-NULL, `*json`
 * receives a JSON document with the route, verdict and evidence.
 *
 * # Safety
 * `poly` must be a live handle; `beta` NULL or NUL-terminated; `verdict`
 * valid for writes; `json` NULL or valid for writes.
 */
enum DynirStatus dynir_classify(const struct DynirPoly *poly,
                                const char *beta,
                                uint32_t n_max,
                                uint32_t oracle_max,
                                uint64_t seed,
                                struct DynirVerdict *verdict,
                                char **json);

/**
 * Release a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void dynir_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYNIR_H */
