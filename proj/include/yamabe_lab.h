#ifndef YAMABE_LAB_H
#define YAMABE_LAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define YL_API __attribute__((visibility("default")))
#else
#define YL_API
#endif

typedef enum yl_status {
  YL_OK = 0,
  YL_ERR_DOMAIN = 1,        /* value outside the mathematical domain */
  YL_ERR_PRECONDITION = 2,  /* documented precondition violated */
  YL_ERR_DIVERGENCE = 3,    /* minimizer fell below its divergence floor */
  YL_ERR_NOT_FOUND = 4,     /* search found nothing in its probe range */
  YL_ERR_INVALID_ARGUMENT = 5,
  YL_ERR_IO = 6,
  YL_ERR_INTERNAL = 7
} yl_status;

typedef enum yl_variant { YL_VARIANT_EXACT = 0, YL_VARIANT_PUBLISHED = 1 } yl_variant;

typedef struct yl_domain yl_domain;
typedef struct yl_metric yl_metric;
typedef struct yl_trace yl_trace;
typedef struct yl_result yl_result;

YL_API const char* yl_version(void);
/* Message of the last failed call on this thread ("" if none). */
YL_API const char* yl_last_error(void);
YL_API const char* yl_status_name(yl_status status);
/* Releases strings returned through char** out-parameters. */
YL_API void yl_free_string(char* s);

/* ---- domains ---------------------------------------------------------- */

YL_API yl_status yl_domain_ball(int n, double radius, yl_domain** out);
YL_API yl_status yl_domain_annulus(int n, double inner_radius, double outer_radius, yl_domain** out);
YL_API void yl_domain_free(yl_domain* d);
YL_API int yl_domain_dimension(const yl_domain* d);
/* 1 for a ball, 2 for an annulus (outer component first). */
YL_API size_t yl_domain_components(const yl_domain* d);

/* ---- metrics (conformally flat, on a domain) ---------------------------- */

YL_API yl_status yl_metric_euclidean(const yl_domain* d, yl_metric** out);
/* Flat interior with constant mean curvature per boundary component. */
YL_API yl_status yl_metric_boundary_curvature(const yl_domain* d, const double* mean_curvature,
                                              size_t count, yl_metric** out);
/* u^{4/(n-2)} delta for the named factors. */
YL_API yl_status yl_metric_constant(const yl_domain* d, double c, yl_metric** out);
YL_API yl_status yl_metric_schwarzschild(const yl_domain* d, double mass, yl_metric** out);
YL_API yl_status yl_metric_affine(const yl_domain* d, double c0, const double slope[3],
                                  yl_metric** out);
YL_API yl_status yl_metric_escobar(const yl_domain* d, const double a[3], yl_metric** out);
YL_API yl_status yl_metric_harmonic(const yl_trace* t, yl_metric** out);
YL_API yl_status yl_metric_radial_table(const yl_domain* d, const double* radii,
                                        const double* values, size_t count, yl_metric** out);
/* c * g. */
YL_API yl_status yl_metric_rescaled(const yl_metric* g, double c, yl_metric** out);
YL_API void yl_metric_free(yl_metric* g);

/* ---- boundary traces (spherical-harmonic coefficients) ------------------ */

YL_API yl_status yl_trace_new(const yl_domain* d, int l_max, yl_trace** out);
YL_API yl_status yl_trace_constant(const yl_domain* d, double value, int l_max, yl_trace** out);
YL_API yl_status yl_trace_random(const yl_domain* d, int l_max, uint64_t seed, double amplitude,
                                 yl_trace** out);
YL_API void yl_trace_free(yl_trace* t);
YL_API int yl_trace_l_max(const yl_trace* t);
YL_API yl_status yl_trace_set(yl_trace* t, size_t component, int l, int m, double value);
YL_API yl_status yl_trace_get(const yl_trace* t, size_t component, int l, int m, double* out);
/* Value of the harmonic extension at (r, polar, azimuth). */
YL_API yl_status yl_trace_extension_value(const yl_trace* t, double r, double polar,
                                          double azimuth, double* out);
YL_API yl_status yl_trace_dirichlet_energy(const yl_trace* t, double* out);

/* ---- energies ----------------------------------------------------------- */

typedef struct yl_energy_report {
  double numerator_interior;
  double numerator_boundary;
  double boundary_volume;
  double energy;
} yl_energy_report;

typedef struct yl_quotient_report {
  double dirichlet;
  double interior;
  double boundary;
  double boundary_norm;
  double value;
} yl_quotient_report;

YL_API yl_status yl_energy(const yl_metric* g, int order, yl_energy_report* out);
YL_API yl_status yl_quotient(const yl_metric* g, const yl_trace* phi, int order,
                             yl_quotient_report* out);
YL_API yl_status yl_negative_part_norm(const yl_metric* g, int order, double* out);

typedef struct yl_cr_report {
  double energy;
  double quotient; /* NaN without a u column */
  size_t nodes;
} yl_cr_report;

YL_API yl_status yl_cr_energy_file(const char* path, int n, yl_cr_report* out);

/* ---- minimizer ---------------------------------------------------------- */

typedef struct yl_minimizer_config {
  int l_max;
  int quadrature_order; /* 0: 2 * l_max + 2 */
  int backtracking;
  double initial_step;
  double armijo_c1;
  int max_halvings;
  double grad_tol;
  int max_iters;
  uint64_t seed;
  double divergence_floor;
} yl_minimizer_config;

typedef struct yl_result_summary {
  double energy;
  int iterations;
  int converged;
  int positive;
  int stalled;
  double final_grad_norm;
} yl_result_summary;

YL_API void yl_minimizer_config_default(yl_minimizer_config* out);
/* The metric must have a flat interior (Euclidean or boundary-curvature). */
YL_API yl_status yl_minimize(const yl_metric* g, const yl_trace* init,
                             const yl_minimizer_config* config, yl_result** out);
YL_API void yl_result_free(yl_result* r);
YL_API yl_status yl_result_summary_get(const yl_result* r, yl_result_summary* out);
YL_API size_t yl_result_history_length(const yl_result* r);
YL_API yl_status yl_result_history(const yl_result* r, size_t i, double* energy,
                                   double* grad_norm);
/* New trace owned by the caller. */
YL_API yl_status yl_result_trace(const yl_result* r, yl_trace** out);

typedef struct yl_residual_report {
  double interior;
  double boundary;
  double constant;
  double mean_curvature;
  double mean_curvature_spread;
} yl_residual_report;

YL_API yl_status yl_euler_lagrange(const yl_metric* g, const yl_trace* t, int order,
                                   yl_residual_report* out);

typedef struct yl_ratio_report {
  double min_ratio;
  double max_ratio;
  double spread;
} yl_ratio_report;

YL_API yl_status yl_extension_ratio(const yl_trace* a, const yl_trace* b, int order,
                                    yl_ratio_report* out);

/* ---- spectra and checkers (JSON reports) -------------------------------- */

/* Spectrum up to degree l_max; with has_h != 0 adds the nondegeneracy
   verdict for constant mean curvature h. */
YL_API yl_status yl_steklov_json(const yl_domain* d, int l_max, int has_h, double h, double tol,
                                 char** out);

typedef struct yl_theorem1_input {
  int n;
  double gamma;
  double area_constant;
  double mean_curvature_g;
  double mean_curvature_h;
  double metric_ratio_sup;
  int area_equality;
} yl_theorem1_input;

YL_API yl_status yl_check_theorem1_json(const yl_theorem1_input* in, char** out);
YL_API yl_status yl_theorem1_area_bound(const yl_theorem1_input* in, double* out);
/* Theorem 1 input from two metrics on one domain; both must have constant
   positive boundary mean curvature. */
YL_API yl_status yl_summarize_theorem1(const yl_metric* g, const yl_metric* h, int order,
                                       double tol, yl_theorem1_input* out);
YL_API yl_status yl_check_corollary_json(int n, int volume_equal, double mean_curvature_g,
                                         double mean_curvature_h, double density_margin,
                                         double metric_ratio_sup, char** out);
YL_API yl_status yl_check_nonpositive_json(double scalar_curvature_max_abs, const double* h,
                                           size_t h_count, const double* hbar, size_t hbar_count,
                                           double tol, char** out);
YL_API yl_status yl_cherrier_json(int n, double c, char** out);
YL_API yl_status yl_cherrier_condition(int n, double sup_v_prime, double c_bound, double mu,
                                       double* lhs, int* satisfied);
YL_API yl_status yl_check_cr_json(double gamma, double r_theta, double r_Theta, double ratio_sup,
                                  char** out);

/* ---- worked examples ---------------------------------------------------- */

YL_API yl_status yl_schwarzschild_mean_curvatures(int n, double r, double m, yl_variant v,
                                                  double* inner, double* outer);
YL_API yl_status yl_schwarzschild_energy(int n, double r, double m, yl_variant v, double* out);
YL_API yl_status yl_euclidean_annulus_energy(int n, double r, double* out);
YL_API yl_status yl_schwarzschild_energy_limit(int n, double r, yl_variant v, double* out);
YL_API yl_status yl_schwarzschild_pipeline_energy(int n, double r, double m, int order,
                                                  yl_energy_report* out);

typedef struct yl_threshold_report {
  double m0;
  double euclidean_energy;
  double probe_min;
  double probe_max;
  int probes;
  int certified;
} yl_threshold_report;

YL_API yl_status yl_find_m0(int n, double r, double tol, yl_variant v, double probe_max,
                            yl_threshold_report* out);

/* a and x have n entries. */
YL_API yl_status yl_escobar_solution(int n, const double* a, const double* x, double* out);
YL_API yl_status yl_escobar_residual(int n, const double* a, int order, double* interior,
                                     double* boundary);
YL_API yl_status yl_escobar_quotient(const double a[3], int order, double* out);

/* {max_defect, argmax, profile: [[polar, defect], ...]} */
YL_API yl_status yl_bump_demo_json(double amplitude, double width, int samples, char** out);

#ifdef __cplusplus
}
#endif

#endif
