/* mm1ps — conditional sojourn-time distributions for the M/M/1 queue under
 * processor sharing.  C interface to the shared library: opaque handles,
 * status codes, per-thread error messages.
 *
 * The service rate is fixed at mu = 1; time is measured in mean service
 * requirements and the arrival rate equals the traffic intensity rho.
 */
#ifndef MM1PS_H
#define MM1PS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mm1ps_status {
    MM1PS_OK = 0,
    MM1PS_ERROR_INVALID = 1,     /* bad handle / null pointer / unknown name */
    MM1PS_ERROR_DOMAIN = 2,      /* argument outside the supported region */
    MM1PS_ERROR_CONVERGENCE = 3, /* quadrature or series failed its own check */
    MM1PS_ERROR_SOLVER = 4,      /* root bracketing/refinement failed */
    MM1PS_ERROR_UNSUPPORTED = 5  /* unsupported order/mode */
} mm1ps_status;

/* Human-readable name of a status code (static storage). */
const char* mm1ps_status_name(mm1ps_status s);

/* Message for the most recent error on this thread (static storage,
 * overwritten by the next failing call). */
const char* mm1ps_last_error(void);

/* ---- model -------------------------------------------------------------- */

typedef struct mm1ps_model mm1ps_model; /* opaque: rho and derived epsilon */

mm1ps_status mm1ps_model_create(double rho, mm1ps_model** out);
void mm1ps_model_free(mm1ps_model* m);
double mm1ps_model_rho(const mm1ps_model* m);
double mm1ps_model_epsilon(const mm1ps_model* m);

/* ---- numerical inversion configuration ---------------------------------- */

typedef enum mm1ps_contour {
    MM1PS_CONTOUR_FIXED_TALBOT = 0,
    MM1PS_CONTOUR_BROMWICH = 1
} mm1ps_contour;

typedef struct mm1ps_inversion {
    int contour;           /* mm1ps_contour */
    int nodes;             /* >= 16 */
    double abscissa_shift; /* exponential shift; 0 = automatic */
    double tolerance;      /* absolute accuracy target */
} mm1ps_inversion;

void mm1ps_inversion_defaults(mm1ps_inversion* cfg);

/* ---- density evaluation -------------------------------------------------- */

typedef struct mm1ps_density {
    double continuous;     /* continuous part of p(t|x) */
    double atom;           /* point mass at t == x (0 when t != x is queried) */
    double err_est;        /* absolute error estimate where available */
    double log_continuous; /* log of the continuous part; finite even when
                              the value underflows double range */
    char regime[24];       /* tag naming the producing formula */
} mm1ps_density;

/* Exact numerical inversion of the waiting-time transform (t > x > 0). */
mm1ps_status mm1ps_density_exact(const mm1ps_model* m, double t, double x,
                                 const mm1ps_inversion* cfg /* nullable */,
                                 mm1ps_density* out);

/* Evaluation by method name: "exact", "auto", "T1-case1".."T1-case4",
 * "match", "gaussian", "T2-case1".."T2-case6", "T2-sigma".  form selects the
 * summation variant where one exists ("direct"/"poisson" for the series
 * cases, "integral"/"pcf"/"spectral" for T2-case6); pass NULL or "" for the
 * default. */
mm1ps_status mm1ps_density_method(const mm1ps_model* m, const char* method,
                                  double t, double x,
                                  const mm1ps_inversion* cfg /* nullable */,
                                  const char* form /* nullable */,
                                  mm1ps_density* out);

/* Regime the "auto" method would pick at (t, x) (static storage). */
const char* mm1ps_classify(const mm1ps_model* m, double t, double x);

/* Point mass of the sojourn law at t == x: (1-rho)*exp(-rho*x). */
mm1ps_status mm1ps_atom_mass(const mm1ps_model* m, double x, double* out);

/* Unconditional sojourn density p(t), exponential mixture over x. */
mm1ps_status mm1ps_density_unconditional(const mm1ps_model* m, double t,
                                         const mm1ps_inversion* cfg /* nullable */,
                                         double* out);

/* ---- singularities and tail constants ------------------------------------ */

mm1ps_status mm1ps_x_star(const mm1ps_model* m, double* out);

/* Dominant transform singularity eta = u + i*v, decay rate r* and spectral
 * amplitude F(x); any output pointer may be NULL. */
mm1ps_status mm1ps_dominant_singularity(const mm1ps_model* m, double x, double* u,
                                        double* v, double* r_star, double* f_amp);

/* First `count` positive roots of the heavy-traffic eigenvalue equation for
 * scaled service X; `roots` must hold `count` doubles. */
mm1ps_status mm1ps_heavy_roots(double X, int count, double* roots);

/* Stationary-point parametrization of the sigma time scale. */
mm1ps_status mm1ps_psi_from_sigma(double sigma, double* psi, double* x_tilde,
                                  double* v_tilde);

/* Fixed-rho tail p(t) ~ C* t^{-5/6} exp(-A t - B t^{1/3}); ros_factor is the
 * random-order-service conversion prefactor (A times C-star over rho). */
mm1ps_status mm1ps_flatto_constants(const mm1ps_model* m, double* A, double* B,
                                    double* C_star, double* ros_factor);
mm1ps_status mm1ps_flatto_tail(const mm1ps_model* m, double t, double* value);

/* Heavy-traffic tail constants; beta_star is returned as the positive decay
 * rate eps^2/4 + eps^3/8. */
mm1ps_status mm1ps_morrison_constants(double eps, double* alpha_star,
                                      double* beta_star, double* gamma_star);
mm1ps_status mm1ps_morrison_density(double sigma, double eps, double* value);

/* ---- reference singularity table ----------------------------------------- */

size_t mm1ps_table1_size(void);
mm1ps_status mm1ps_table1_cell(size_t index, double* rho, double* x, double* u,
                               double* v);

/* ---- simulation ----------------------------------------------------------- */

typedef struct mm1ps_sim_config {
    double rho;
    double x;
    unsigned long long replications;
    unsigned long long seed;
    unsigned long long max_events; /* 0 = default cap */
} mm1ps_sim_config;

typedef struct mm1ps_sim mm1ps_sim; /* opaque sample handle */

mm1ps_status mm1ps_simulate(const mm1ps_sim_config* cfg, mm1ps_sim** out);
void mm1ps_sim_free(mm1ps_sim* s);

unsigned long long mm1ps_sim_count(const mm1ps_sim* s);
double mm1ps_sim_mean(const mm1ps_sim* s);
double mm1ps_sim_variance(const mm1ps_sim* s);
double mm1ps_sim_ci_halfwidth(const mm1ps_sim* s); /* 95% */
double mm1ps_sim_atom_fraction(const mm1ps_sim* s);
/* Borrowed pointer to the per-replication sojourn times (replication order,
 * valid until mm1ps_sim_free). */
const double* mm1ps_sim_values(const mm1ps_sim* s, unsigned long long* count);

/* Histogram density estimate of the continuous part at `n` grid points;
 * estimates and stderrs must each hold n doubles.  bandwidth <= 0 picks a
 * plug-in width. */
mm1ps_status mm1ps_sim_density(const mm1ps_sim* s, const double* grid, size_t n,
                               double bandwidth, double* estimates, double* stderrs);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MM1PS_H */
