#ifndef MM1PS_SINGULARITIES_HPP
#define MM1PS_SINGULARITIES_HPP

#include <complex>
#include <vector>

#include "model.hpp"

namespace mm1ps::singularities {

// Location of the dominant transform singularity in the eta-plane
// (s = -1 - rho + 2*sqrt(rho)*cosh(eta), eta = u + i*v), together with the
// decay rate and amplitude of the large-time spectral form
// p(t|x) ~ f_amp * exp(r_star * t).
struct SingularityResult {
    double u = 0.0;      // real part; positive only below the threshold x*
    double v = 0.0;      // imaginary part in (0, pi]
    double r_star = 0.0; // decay rate, always < -(1-sqrt(rho))^2
    double f_amp = 0.0;  // spectral amplitude F(x)
};

// Positive roots of the heavy-traffic eigenvalue equation
// ((2iv+1)/(2iv-1))^2 = exp(-2ivX), in increasing order.
struct HeavyRoots {
    double X = 0.0;
    std::vector<double> roots;
};

// Stationary point of the sigma-scale Laplace integral, parametrized by psi.
struct PsiPoint {
    double psi = 0.0;     // in (0, pi)
    double sigma = 0.0;   // 4*tan^3(psi/2)*(psi + sin(psi))
    double x_tilde = 0.0; // 2*psi*tan(psi/2)
    double v_tilde = 0.0; // cot(psi/2)/2
};

// Threshold service requirement where the dominant singularity leaves the
// imaginary axis: x* = (1-sqrt(rho)) / (sqrt(rho)*(1+sqrt(rho))).
double x_star(const ModelParams& params);

SingularityResult dominant_singularity(double x, const ModelParams& params);

// Truncated expansions of the decay rate r*(x).
double r_star_large_x(double x, const ModelParams& params);
double r_star_small_x(double x, const ModelParams& params);
// Two-term estimate of the root v(x) for large x.
double v_estimate_large_x(double x, const ModelParams& params);

HeavyRoots heavy_roots(double X, int count);

// Eigenvalue-equation residual |((2iv+1)/(2iv-1))^2 - exp(-2ivX)|.
double heavy_root_residual(double v, double X);

PsiPoint psi_from_sigma(double sigma);

// Denominator of the eta-plane integrand; zero exactly at the transform
// singularities.  Exposed for dominance scans.
std::complex<double> eta_denominator(std::complex<double> eta, double x,
                                     const ModelParams& params);

} // namespace mm1ps::singularities

#endif
