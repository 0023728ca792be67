/*
 * C interface to the weighted Catalan library.
 *
 * Handles are opaque and must be released with the matching *_free call.
 * Functions returning text hand ownership of a NUL-terminated string to the
 * caller, to be released with wcat_string_free. On failure the status is
 * nonzero, *out is left NULL and wcat_last_error() describes the problem for
 * the calling thread.
 */
#ifndef WCAT_H
#define WCAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WCAT_API __declspec(dllexport)
#else
#define WCAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wcat_status {
  WCAT_OK = 0,
  WCAT_ERR_MISMATCH = 1, /* independent computations disagree */
  WCAT_ERR_PARSE = 2,
  WCAT_ERR_DOMAIN = 3,
  WCAT_ERR_RESOURCE = 4,
  WCAT_ERR_INTERNAL = 5,
  WCAT_ERR_ARGUMENT = 6 /* NULL handle or output pointer */
} wcat_status;

typedef struct wcat_weight wcat_weight;
typedef struct wcat_shape wcat_shape;

WCAT_API const char* wcat_version(void);
WCAT_API const char* wcat_last_error(void);
WCAT_API void wcat_string_free(char* s);

/* Weights: "preset:NAME", "poly:c0,c1,...", "table:v0,v1,...". */
WCAT_API wcat_status wcat_weight_parse(const char* spec, wcat_weight** out);
WCAT_API void wcat_weight_free(wcat_weight* w);
WCAT_API wcat_status wcat_weight_spec(const wcat_weight* w, char** out);
/* b(x) in decimal. */
WCAT_API wcat_status wcat_weight_eval(const wcat_weight* w, uint64_t x, char** out);

/* Shapes: nested parentheses, "()" is a single vertex, "" the empty tree. */
WCAT_API wcat_status wcat_shape_parse(const char* text, unsigned q, wcat_shape** out);
WCAT_API void wcat_shape_free(wcat_shape* s);
WCAT_API wcat_status wcat_shape_key(const wcat_shape* s, char** out);

/* C_n^b (q = 2) or the q-ary weighted count, in decimal; modulus 0 means exact. */
WCAT_API wcat_status wcat_compute(const wcat_weight* w, uint64_t n, unsigned q, uint64_t modulus, char** out);

/* Valuations of expr in {"cb", "cb-c", "cb-1"} for n in [first, last].
 * engine: 0 automatic, 1 exact, 2 modular. csv != 0 selects CSV output. */
WCAT_API wcat_status wcat_valuation_profile(const wcat_weight* w, const char* expr, unsigned long p,
                                            uint64_t first, uint64_t last, int engine, int csv, char** out);

/* theorem in {"ps", "main", "conj", "qmain:Q"}; window_end 0 picks the default window. */
WCAT_API wcat_status wcat_check_conditions(const wcat_weight* w, const char* theorem, uint64_t window_begin,
                                           uint64_t window_end, char** out);

/* Orbit listing as JSON. minimal != 0 lists minimal orbits only (q = 2). */
WCAT_API wcat_status wcat_orbits(uint64_t n, unsigned q, int minimal, int reduce, uint64_t max_vertices,
                                 char** out);

/* Epsilon digits 0..max_m of an orbit. method in {"direct", "recursive", "coin", "all"}.
 * With "all" the JSON is produced either way and WCAT_ERR_MISMATCH reports disagreement. */
WCAT_API wcat_status wcat_epsilon(const wcat_weight* w, const wcat_shape* s, uint64_t max_m, const char* method,
                                  char** out);

/* Period report of C_n^b mod m over max_terms terms (0: default window). */
WCAT_API wcat_status wcat_period(const wcat_weight* w, uint64_t modulus, uint64_t max_terms, char** out);

/* P/Q for truncation k, reduced mod m when modulus != 0, with the purity verdict. */
WCAT_API wcat_status wcat_pq(const wcat_weight* w, uint64_t truncation, uint64_t modulus, char** out);

/* Least k <= bound with m | b(0)...b(k); JSON {"truncation": k or null}. */
WCAT_API wcat_status wcat_truncation_index(const wcat_weight* w, uint64_t modulus, uint64_t bound, char** out);

/* Morse numbers L_n. */
WCAT_API wcat_status wcat_morse_number(uint64_t n, char** out);
/* Period of L_n mod 3^r against 2*3^(r-3); window 0 picks the default. */
WCAT_API wcat_status wcat_morse_mod3r(unsigned r, uint64_t window, char** out);
/* which in {"2adic", "2adic-general:K", "5adic", "3adic"}. */
WCAT_API wcat_status wcat_morse_report(const char* which, uint64_t window, unsigned depth, char** out);
/* Fit of alpha from (n_i, t_i) pairs; lower_bound may be NULL. */
WCAT_API wcat_status wcat_fit_padic(const uint64_t* n, const unsigned* t, const int* lower_bound, size_t count,
                                    unsigned long p, unsigned depth, char** out);

#ifdef __cplusplus
}
#endif

#endif /* WCAT_H */
