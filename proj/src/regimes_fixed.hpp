#ifndef MM1PS_REGIMES_FIXED_HPP
#define MM1PS_REGIMES_FIXED_HPP

#include "model.hpp"

namespace mm1ps::regimes_fixed {

// Saddle point of the transform exponent phi(s) = s(t/x - 1) + rho*r(s)
// along the real axis, with the closed forms of the pieces entering the
// Laplace-method evaluation.
struct SaddleData {
    double s0 = 0.0;        // saddle location, > -(1-sqrt(rho))^2
    double r_s0 = 0.0;      // r(s0) = sqrt((t-x)/(rho*t))
    double phase = 0.0;     // x*phi(s0) = (x-t)(1+rho) + 2*sqrt(t(t-x))
    double curvature = 0.0; // phi''(s0) = 2 t^{3/2} (t-x)^{3/2} / (sqrt(rho) x^3)
};

// Constants of the unconditional large-time tail
// p(t) ~ C* t^{-5/6} exp(-A t - B t^{1/3}).
struct TailConstants {
    double A = 0.0;
    double B = 0.0;
    double C_star = 0.0;
    // Prefactor A*C*/rho of the random-order-service conversion of the tail.
    double ros_density_factor = 0.0;
};

enum class SeriesForm { Direct, Poisson };

SaddleData saddle_data(double t, double x, const ModelParams& params);

// Small-gap Bessel form: x large, t - x small with x(t-x) = O(1).
DensityValue regime1_bessel(double t, double x, const ModelParams& params);

// Laplace/saddle-point form: x and t large with 1 < t/x < infinity.
DensityValue regime2_saddle(double t, double x, const ModelParams& params);

// Theta-series form: x large with a = t/x^2 = O(1); two dual summations.
DensityValue regime3_series(double t, double x, const ModelParams& params,
                            SeriesForm form);

// Spectral form: x = O(1), t large; amplitude and rate from the dominant
// singularity solver.
DensityValue regime4_spectral(double t, double x, const ModelParams& params);

// Bridge between the theta-series and spectral regions (x = O(t^{1/3})).
DensityValue matching_formula(double t, double x, const ModelParams& params);

// Gaussian spread around the mean sojourn time (diagnostic special case of
// the saddle form near t/x = 1/(1-rho)).
DensityValue gaussian_approx(double t, double x, const ModelParams& params);

TailConstants flatto_constants(const ModelParams& params);

// Tail value C* t^{-5/6} exp(-A t - B t^{1/3}) together with its constants.
double flatto_tail(double t, const ModelParams& params);
double log_flatto_tail(double t, const ModelParams& params);

// Reduced kernels of the dual theta series as functions of (a, rho) only;
// the two must agree identically.  Exposed for the identity tests.
double series3_direct_kernel(double a, const ModelParams& params);
double series3_poisson_kernel(double a, const ModelParams& params);

// Large-x limit of the spectral amplitude.
double f_amp_large_x(double x, const ModelParams& params);

} // namespace mm1ps::regimes_fixed

#endif
