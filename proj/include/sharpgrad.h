#ifndef SHARPGRAD_H
#define SHARPGRAD_H

/* C interface to the sharp-gradient-constant library.
 *
 * All entry points return an sg_error code (SG_OK on success) and write
 * results through out-parameters.  Handles are opaque; create/destroy pairs
 * own them.  A context carries evaluation settings and is immutable while a
 * computation runs, so one context may be shared across threads.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SG_OK = 0,
    SG_ERR_DOMAIN = 1,          /* input outside the mathematical domain */
    SG_ERR_NO_CONVERGENCE = 2,  /* series or quadrature missed its target */
    SG_ERR_INVALID = 3,         /* null handle or malformed argument */
    SG_ERR_UNKNOWN_SUITE = 4,   /* verification suite name not recognized */
    SG_ERR_INTERNAL = 5
} sg_error;

/* Stable message for an error code (static storage, do not free). */
const char *sg_error_message(int code);

const char *sg_version(void);

/* ---- evaluation context ---------------------------------------------- */

typedef struct sg_context sg_context;

sg_context *sg_context_create(void);
void sg_context_destroy(sg_context *ctx);

/* Quadrature/series tolerance (default 1e-9). */
int sg_context_set_tolerance(sg_context *ctx, double tol);
/* Sphere-cubature refinement multiplier (default 1). */
int sg_context_set_refinement(sg_context *ctx, int refinement);
/* Series term cap for coefficient sums (default 200). */
int sg_context_set_kmax(sg_context *ctx, int kmax);

/* ---- constants -------------------------------------------------------- */

typedef enum {
    SG_METHOD_REPRESENTATION = 0,
    SG_METHOD_ORACLE_DIRECT = 1,
    SG_METHOD_ORACLE_MOEBIUS = 2,
    SG_METHOD_CLOSED3 = 3
} sg_method;

typedef struct {
    double value;
    double error_bound;
    int converged;
} sg_estimate;

/* Directional constant C(rho e_1, l_alpha) in dimension n >= 3 by the given
 * method.  SG_METHOD_CLOSED3 requires n = 3 and alpha = 0. */
int sg_constant(const sg_context *ctx, int n, double rho, double alpha,
                int method, sg_estimate *out);

/* max over alpha of the directional constant; *argmax_alpha may be NULL. */
int sg_gradient_constant(const sg_context *ctx, int n, double rho,
                         sg_estimate *out, double *argmax_alpha);

int sg_radial_constant_closed3(double rho, double *out);
int sg_center_constant(int n, double *out);
int sg_halfspace_constant(int n, double *out);

/* Scaled Cauchy-Schwarz majorant of the directional constant. */
int sg_majorant_scaled(const sg_context *ctx, int n, double rho, double alpha,
                       double *out);

/* ---- verification suites ---------------------------------------------- */

/* Suite names: "lemma1" .. "lemma7", "chain", "all".  n > 0 restricts the
 * dimension grid of suites that have one; n <= 0 runs the default grid. */

typedef struct sg_report sg_report;

int sg_verify(const sg_context *ctx, const char *suite, int n, sg_report **out);

int sg_report_count(const sg_report *rep);
/* 1 when every case passed. */
int sg_report_passed(const sg_report *rep);
/* Case name including its inputs (owned by the report). */
const char *sg_report_case_name(const sg_report *rep, int index);
/* Any out-parameter may be NULL. */
int sg_report_case(const sg_report *rep, int index, double *lhs, double *rhs,
                   double *gap, double *tol, int *passed);
void sg_report_destroy(sg_report *rep);

#ifdef __cplusplus
}
#endif

#endif /* SHARPGRAD_H */
