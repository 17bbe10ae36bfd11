#ifndef XXCHAIN_CAPI_H
#define XXCHAIN_CAPI_H

/* C interface of the xxchain shared library.
 *
 * Every function returns a status code:
 *   0  ok
 *   1  verification failure (xx_verify only)
 *   2  validation error (bad parameters)
 *   3  resource cap exceeded
 *   4  exceptional point (metric breakdown / Jordan blocks suspected)
 * On nonzero status xx_last_error() describes the failure (thread-local).
 * Strings returned through char** are heap-allocated; release them with
 * xx_free().  Chain handles are opaque; release with xx_chain_destroy().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct xx_chain xx_chain;

const char* xx_last_error(void);
void xx_free(char* s);

/* Accepts plain decimals and literal multiples of pi: "0.5pi", "pi", "-pi/3". */
int xx_parse_angle(const char* text, double* out);

/* variant: "H", "Hprime", "Hg", "HgTruncated", "Periodic" */
int xx_chain_create(int sites, double g, double theta, const char* variant,
                    xx_chain** out);
void xx_chain_destroy(xx_chain* chain);

/* Bethe spectrum as CSV (columns M,g,theta,j,Re_eps,Im_eps,residual) with a
 * leading metadata comment line.  *on_circle reports the root regime. */
int xx_spectrum_csv(xx_chain* chain, double residual_tol, int* on_circle, char** out);

/* Dense spectrum of one S^z sector (twice_sz = 2 S^z), same CSV layout with
 * per-eigenpair residuals. */
int xx_sector_spectrum_csv(xx_chain* chain, int twice_sz, char** out);

/* Metric bundle report: eta, h, C matrices plus residual summary as JSON.
 * Refuses with status 4 near exceptional points unless force is nonzero. */
int xx_metric_json(xx_chain* chain, int force, char** out);

/* Perturbation series artifacts (theta = pi/2 runs are exact rationals). */
int xx_lambda_json(int order, int prime, char** out);
int xx_series_json(int sites, int order, double theta, char** out);
int xx_ptable_csv(int sites, int order, char** out);

/* algebra: "gl11", "uqsl2", "uqgl11", "tl", "hecke" */
int xx_algebra_json(const char* algebra, int sites, double g, double theta,
                    int pt_variant, char** out);

/* Gram data of the down-spin sector m at g = 1, theta = pi/2 (odd sites). */
int xx_gram_json(int sites, int m, char** out);

/* Invariant suites of all modules.  full != 0 adds the large-size tier.
 * tamper != 0 injects a deliberate transpose error into one metric check as
 * a negative control of the harness.  Returns 0 when every check passes,
 * 1 otherwise; *failures counts failing checks; *report is a pass/fail table. */
int xx_verify(int full, int tamper, char** report, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* XXCHAIN_CAPI_H */
