#ifndef MM1PS_REGIMES_HEAVY_HPP
#define MM1PS_REGIMES_HEAVY_HPP

#include "model.hpp"

namespace mm1ps::regimes_heavy {

// Scaled coordinates used by the heavy-traffic cases.  All fields derive
// from (t, x, eps) through one canonical expression each.
struct HeavyScales {
    double t = 0.0, x = 0.0, eps = 0.0;
    double T = 0.0;      // eps * t
    double X = 0.0;      // eps * x
    double Z = 0.0;      // X / sqrt(eps)
    double Theta = 0.0;  // eps * T
    double sigma = 0.0;  // eps * Theta
    double T_star = 0.0; // (T - X) / eps^2

    static HeavyScales from_unscaled(double t, double x, double eps);
    static HeavyScales from_T_X(double T, double X, double eps);
    static HeavyScales from_Theta_X(double Theta, double X, double eps);
    static HeavyScales from_sigma_X(double sigma, double X, double eps);
};

struct MorrisonTail {
    double alpha_star = 0.0;
    double log_alpha_star = 0.0; // alpha* overflows below eps ~ 0.0057
    // Decay rate of exp(-beta*.mu t); stored positive.  The printed constant
    // carries a minus sign that would make the tail grow; the rate itself is
    // eps^2/4 + eps^3/8.
    double beta_star = 0.0;
    double gamma_star = 0.0;
};

// Case 1: x, t = O(1); numerical inversion of the eps-leading transform.
DensityValue ht_case1(double t, double x, double eps, const InversionConfig& cfg = {});

// Case 2: x = O(1), T = eps*t = O(1); exponential law plus eps^2 correction.
DensityValue ht_case2(double T, double x, double eps);
// Coefficient of the delta(T) bookkeeping term: -(x+3)*eps^2/6, the mass
// that lives on the shorter unscaled time scale.
double ht_case2_mass_deficit(double x, double eps);

// Case 3: T - X -> 0+ with T* = (T-X)/eps^2 = O(1).
DensityValue ht_case3(double X, double T_star, double eps);

// Case 4: X, T = O(1) with 1 < T/X.
DensityValue ht_case4(double T, double X, double eps);

enum class SeriesForm { Direct, Poisson };

// Case 5: X = sqrt(eps)*Z, T = O(1); dual theta series.
DensityValue ht_case5(double T, double Z, double eps, SeriesForm form);

enum class Case6Form { Integral, PcfSeries, Spectral };

// Case 6: X = O(1), Theta = eps*T = O(1); three equivalent representations.
// The spectral form carries the O(eps) exponent correction; the other two
// are leading order.
DensityValue ht_case6(double Theta, double X, double eps, Case6Form form);

// sigma-scale single-mode form (largest time scale, t = sigma/eps^3).
DensityValue ht_sigma_scale(double sigma, double X, double eps);

// Unconditional density on the sigma scale via the psi parametrization.
double morrison_density(double sigma, double eps);
double log_morrison_density(double sigma, double eps);

MorrisonTail morrison_tail_constants(double eps);

// Spectral mode amplitude of case 6.
double f_tilde(double X, double v);

// Closed form of the n = 0 term of the case-6 series (derivable from the
// first geometric-series term of the contour integral); used as the anchor
// identity for the parabolic-cylinder series.
double ht_case6_n0_closed(double Theta, double X, double eps);
// Leading (D_0) part of that same term; reduces exactly to the X -> infinity
// single-Gaussian form.
double ht_case6_limit_large_X(double Theta, double X, double eps);

} // namespace mm1ps::regimes_heavy

#endif
