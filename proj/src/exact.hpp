#ifndef MM1PS_EXACT_HPP
#define MM1PS_EXACT_HPP

#include <complex>
#include <vector>

#include "model.hpp"

namespace mm1ps::exact {

// Root of rho*r^2 - (1+rho+s)*r + 1 = 0 with r -> 0 as Re(s) -> +infinity.
std::complex<double> root_r(std::complex<double> s, const ModelParams& params);

// Laplace transform of the conditional waiting time W(x) = V(x) - x.
std::complex<double> waiting_lt(std::complex<double> s, double x, const ModelParams& params);

// The sojourn law carries point masses at every t = (k+1)x, k >= 0: the
// tagged job shares the whole visit with exactly k ever-present companions
// (each initially longer than x, no arrivals).  Mass of the k-th atom:
//   c_k = (1-rho) e^{-rho x} * q^k,   q = rho e^{-x(1+rho)}.
double atom_mass(double x, const ModelParams& params);              // k = 0
double atom_mass_k(int k, double x, const ModelParams& params);     // general k
double atomic_total(double x, const ModelParams& params);           // sum over k

// Transform of the whole atom train: sum_k c_k e^{-k x s} = c_0/(1 - q e^{-x s}).
std::complex<double> atomic_lt(std::complex<double> s, double x, const ModelParams& params);

// Continuous part of p(t|x) for t > x by numerical Bromwich inversion of the
// atom-subtracted waiting-time transform at w = t - x.
DensityValue invert_density(double t, double x, const ModelParams& params,
                            const InversionConfig& cfg = {});

// Unconditional sojourn density p(t) = exp(-t)-weighted mixture of p(t|x).
double unconditional_density(double t, const ModelParams& params,
                             const InversionConfig& cfg = {});

// Mass, density-jump and slope-jump carried by one echo front, expressed
// against one-sided exponentials of rate theta.
struct FrontCoeffs {
    double mass = 0.0;
    double jump = 0.0;
    double slope = 0.0;
    double theta = 1.0;
};

// Reusable evaluator for many t at one (x, rho): caches the exponential
// shift derived from the dominant singularity so grid sweeps and quadratures
// skip the per-call root solve.
class ConditionalDensity {
public:
    ConditionalDensity(double x, const ModelParams& params, const InversionConfig& cfg = {});
    DensityValue operator()(double t) const;
    double decay_rate() const { return r_star_; } // dominant singularity location
    double atom() const;                          // mass at t = x

    // Integral of the continuous part over (x, t]; inverts the atom-free
    // transform divided by s, which is one degree smoother than the density.
    double cdf_continuous(double t) const;
    // Full distribution function P(V(x) <= t), point masses included.
    double cdf(double t) const;

private:
    std::vector<FrontCoeffs> front_coeffs(int K, double theta) const;

    double x_;
    ModelParams params_;
    InversionConfig cfg_;
    double r_star_;
    double branch_point_; // -(1 - sqrt(rho))^2
};

// Below this gap the inversion error estimate is no longer trustworthy and
// the small-gap Bessel formula should be used instead.
inline constexpr double kMinGap = 1e-8;

} // namespace mm1ps::exact

#endif
