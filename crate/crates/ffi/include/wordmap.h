#ifndef WORDMAP_H
#define WORDMAP_H

#include <stddef.h>
#include <stdint.h>

typedef enum WmStatus {
  WM_STATUS_OK = 0,
  WM_STATUS_NULL_POINTER = 1,
  WM_STATUS_INVALID_UTF8 = 2,
  WM_STATUS_PARSE = 3,
  WM_STATUS_NOT_IN_DERIVED_SUBGROUP = 4,
  WM_STATUS_SINGULAR_MATRIX = 5,
  WM_STATUS_CONIC_VIOLATION = 6,
  WM_STATUS_TRACE_MISMATCH = 7,
  WM_STATUS_PARABOLIC_TRACE = 8,
  WM_STATUS_REDUCIBLE_PAIR = 9,
  WM_STATUS_NOT_DIVISIBLE = 10,
  WM_STATUS_DEGENERATE = 11,
  WM_STATUS_PRECONDITION = 12,
  WM_STATUS_RESIDUAL = 13,
  WM_STATUS_IDENTITY_VIOLATION = 14,
  WM_STATUS_PANIC = 15,
} WmStatus;

// Opaque trace polynomial in `s`, `t`, `u` with integer coefficients.
typedef struct WmPoly WmPoly;

// Opaque reduced word in the free group on `x`, `y`.
typedef struct WmWord WmWord;

typedef struct WmComplex {
  double re;
  double im;
} WmComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next `wm_*` call on the same thread.
const char *wm_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void wm_string_free(char *s);

// Parses a word such as `x^2y^-1[x,y]` into a reduced word.
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
enum WmStatus wm_word_parse(const char *text, struct WmWord **out);

// # Safety
// `word` comes from `wm_word_parse` and is not used afterwards. Null is ignored.
void wm_word_free(struct WmWord *word);

// Canonical text of a word, e.g. `x^2y^-1`.
//
// # Safety
// `word` is a live handle; `out` is writable.
enum WmStatus wm_word_to_string(const struct WmWord *word, char **out);

// Exponent sums of `x` and `y`.
//
// # Safety
// `word` is a live handle; `ex`, `ey` are writable.
enum WmStatus wm_word_exponent_sums(const struct WmWord *word, int64_t *ex, int64_t *ey);

// The polynomial `P` with `tr w(x, y) = P(tr x, tr y, tr xy)`.
//
// # Safety
// `word` is a live handle; `out` is writable.
enum WmStatus wm_word_trace_poly(const struct WmWord *word, struct WmPoly **out);

// Parses a polynomial such as `s^2 + t^2 - s*t*u - 2`.
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
enum WmStatus wm_poly_parse(const char *text, struct WmPoly **out);

// # Safety
// `poly` comes from this library and is not used afterwards. Null is ignored.
void wm_poly_free(struct WmPoly *poly);

// # Safety
// `poly` is a live handle; `out` is writable.
enum WmStatus wm_poly_to_string(const struct WmPoly *poly, char **out);

// JSON object `{"poly": text, "terms": [{"e": [i, j, k], "c": "coeff"}, ...]}`;
// coefficients are decimal strings.
//
// # Safety
// `poly` is a live handle; `out` is writable.
enum WmStatus wm_poly_to_json(const struct WmPoly *poly, char **out);

// Evaluates at `(s, t, u)`.
//
// # Safety
// `poly` is a live handle; `out` is writable.
enum WmStatus wm_poly_eval(const struct WmPoly *poly,
                           struct WmComplex s,
                           struct WmComplex t,
                           struct WmComplex u,
                           struct WmComplex *out);

// Singular data of the `[x^n, y^m]` trace surfaces as a JSON object with
// keys `A_n`, `A_m`, `B_nm`.
//
// # Safety
// `out` is writable.
enum WmStatus wm_singular_sets_json(uint32_t n, uint32_t m, char **out);

// Samples `count` points of `P_w = alpha` from `seed` and solves
// `w(x, y) = g` over each. `g` is four row-major entries, or null for
// `y_alpha`. The result is a JSON array of solution objects.
//
// # Safety
// `word` is a live handle; `g` is null or points to four values; `out` is writable.
enum WmStatus wm_solve_json(const struct WmWord *word,
                            struct WmComplex alpha,
                            const struct WmComplex *g,
                            uint32_t count,
                            uint64_t seed,
                            char **out);

// Library version string; static, do not free.
const char *wm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WORDMAP_H */
