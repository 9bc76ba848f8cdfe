#ifndef EXUNIT_H
#define EXUNIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ExuCertify {
  EXU_CERTIFY_CERTIFICATE = 0,
  EXU_CERTIFY_DEGREE_DIVISIBLE_BY3 = 1,
  EXU_CERTIFY_NOT_SPLIT = 2,
  EXU_CERTIFY_INCONCLUSIVE = 3,
} ExuCertify;

typedef enum ExuSplit {
  EXU_SPLIT_SPLIT = 0,
  EXU_SPLIT_NOT_SPLIT = 1,
  EXU_SPLIT_INCONCLUSIVE = 2,
} ExuSplit;

/**
 * Status codes returned by every fallible function.
 */
typedef enum ExuStatus {
  EXU_STATUS_OK = 0,
  EXU_STATUS_NULL_POINTER = 1,
  EXU_STATUS_INVALID_UTF8 = 2,
  EXU_STATUS_PARSE = 3,
  EXU_STATUS_INVALID_POLYNOMIAL = 4,
  EXU_STATUS_INVALID_ARGUMENT = 5,
  EXU_STATUS_BUFFER_TOO_SMALL = 6,
  EXU_STATUS_INTERNAL = 7,
} ExuStatus;

/**
 * Number field `Q[x]/(g)` for monic irreducible `g`.
 */
typedef struct ExuField ExuField;

/**
 * Integer polynomial.
 */
typedef struct ExuPoly ExuPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *exu_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void exu_string_free(char *s);

/**
 * Parses an ascending coefficient list such as `"1,-42,39,1"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ExuStatus exu_poly_parse(const char *text, struct ExuPoly **out);

/**
 * # Safety
 * `poly` must come from [`exu_poly_parse`] and not be freed twice.
 */
void exu_poly_free(struct ExuPoly *poly);

/**
 * Degree of `poly`, `-1` for the zero polynomial.
 *
 * # Safety
 * `poly` and `out` must be valid pointers.
 */
enum ExuStatus exu_poly_degree(const struct ExuPoly *poly, int64_t *out);

/**
 * Canonical coefficient list of `poly`; free with [`exu_string_free`].
 *
 * # Safety
 * `poly` and `out` must be valid pointers.
 */
enum ExuStatus exu_poly_to_string(const struct ExuPoly *poly, char **out);

/**
 * Builds `Q[x]/(g)`; fails unless `g` is monic and irreducible.
 *
 * # Safety
 * `poly` and `out` must be valid pointers.
 */
enum ExuStatus exu_field_new(const struct ExuPoly *poly, struct ExuField **out);

/**
 * # Safety
 * `field` must come from [`exu_field_new`] and not be freed twice.
 */
void exu_field_free(struct ExuField *field);

/**
 * # Safety
 * `field` and `out` must be valid pointers.
 */
enum ExuStatus exu_field_degree(const struct ExuField *field, size_t *out);

/**
 * Whether `prime` splits completely in `field`.
 *
 * # Safety
 * `field` and `out` must be valid pointers.
 */
enum ExuStatus exu_splits_completely(const struct ExuField *field,
                                     uint32_t prime,
                                     enum ExuSplit *out);

/**
 * Runs the certifier. When `report` is non-null it receives the JSON
 * report, to be released with [`exu_string_free`].
 *
 * # Safety
 * `field` and `out` must be valid; `report` may be null.
 */
enum ExuStatus exu_certify(const struct ExuField *field, enum ExuCertify *out, char **report);

/**
 * Whether the element with power-basis coordinates `coords` (comma
 * separated rationals) and `1 - x` are both units of `Z[a]`.
 *
 * # Safety
 * `field`, `coords` and `out` must be valid pointers.
 */
enum ExuStatus exu_is_exceptional_unit(const struct ExuField *field, const char *coords, bool *out);

/**
 * Writes the admissible cycle lengths into `lengths` (capacity `capacity`)
 * and their count into `len`; `len = 0` means no bound is available.
 *
 * # Safety
 * `field`, `len` and a `lengths` buffer of `capacity` entries must be valid.
 */
enum ExuStatus exu_cycle_bound(const struct ExuField *field,
                               uint32_t *lengths,
                               size_t capacity,
                               size_t *len);

/**
 * Runs the census and reports the number of hits and of undecided
 * candidates.
 *
 * # Safety
 * `hits` and `inconclusive` must be valid pointers.
 */
enum ExuStatus exu_search_count(size_t degree,
                                uint32_t height,
                                uint32_t prime,
                                size_t jobs,
                                size_t *hits,
                                size_t *inconclusive);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXUNIT_H */
