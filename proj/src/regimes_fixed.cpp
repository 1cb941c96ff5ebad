#include "regimes_fixed.hpp"

#include <cmath>

#include "errors.hpp"
#include "singularities.hpp"
#include "specfun.hpp"

namespace mm1ps::regimes_fixed {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_support(double t, double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(t))
        throw DomainError(std::string(who) + ": requires finite t and x > 0");
    if (!(t > x)) throw DomainError(std::string(who) + ": requires t > x");
}
} // namespace

SaddleData saddle_data(double t, double x, const ModelParams& params) {
    require_support(t, x, "saddle_data");
    const double rho = params.rho;
    const double sq = params.sqrt_rho();
    SaddleData sd;
    sd.s0 = -1.0 - rho + sq * (2.0 * t - x) / std::sqrt(t * (t - x));
    sd.r_s0 = std::sqrt((t - x) / (rho * t));
    sd.phase = (x - t) * (1.0 + rho) + 2.0 * std::sqrt(t * (t - x));
    sd.curvature = 2.0 * std::pow(t, 1.5) * std::pow(t - x, 1.5) / (sq * x * x * x);
    return sd;
}

DensityValue regime1_bessel(double t, double x, const ModelParams& params) {
    require_support(t, x, "regime1_bessel");
    const double rho = params.rho;
    const double w = t - x;
    const double z = 2.0 * std::sqrt(rho * x * w);
    const double logv = std::log1p(-rho) + 0.5 * std::log(rho * x / w) - rho * x +
                        specfun::log_bessel_i1(z);
    DensityValue d = DensityValue::from_log(logv, "T1-case1");
    return d;
}

DensityValue regime2_saddle(double t, double x, const ModelParams& params) {
    require_support(t, x, "regime2_saddle");
    const double rho = params.rho;
    const double beta = t / x;
    const double logv = std::log1p(-rho) + 0.25 * std::log(rho) +
                        2.0 * t * std::sqrt(rho * (1.0 - x / t)) - (1.0 + rho) * t + x -
                        std::log(2.0 * std::sqrt(kPi) * std::sqrt(x)) -
                        0.75 * std::log(beta * (beta - 1.0)) -
                        2.0 * std::log(std::sqrt(beta) - std::sqrt(rho * (beta - 1.0)));
    return DensityValue::from_log(logv, "T1-case2");
}

double series3_direct_kernel(double a, const ModelParams& params) {
    if (!(a > 0.0)) throw DomainError("series3_direct_kernel requires a > 0");
    const double sq = params.sqrt_rho();
    double sum = 0.0;
    for (int n = 0; n < 200; ++n) {
        const double m = 2.0 * n + 1.0;
        const double term = std::exp(-m * m * sq / (4.0 * a)) * (m * m * sq - 2.0 * a);
        sum += term;
        if (n >= 2 && std::abs(term) < 1e-14 * std::max(std::abs(sum), 1e-300)) break;
    }
    return sum / (2.0 * std::sqrt(kPi) * std::pow(params.rho, 0.25) * std::pow(a, 2.5));
}

double series3_poisson_kernel(double a, const ModelParams& params) {
    if (!(a > 0.0)) throw DomainError("series3_poisson_kernel requires a > 0");
    const double sq = params.sqrt_rho();
    double sum = 0.0;
    double sign = 1.0;
    for (int m = 1; m < 200; ++m, sign = -sign) {
        const double term = sign * m * m * std::exp(-kPi * kPi * m * m * a / sq);
        sum += term;
        if (m >= 2 && std::abs(term) < 1e-14 * std::max(std::abs(sum), 1e-300)) break;
    }
    return 2.0 * kPi * kPi / params.rho * sum;
}

DensityValue regime3_series(double t, double x, const ModelParams& params, SeriesForm form) {
    require_support(t, x, "regime3_series");
    const double a = t / (x * x);
    const double sq = params.sqrt_rho();
    const double kernel = form == SeriesForm::Direct ? series3_direct_kernel(a, params)
                                                     : series3_poisson_kernel(a, params);
    if (!(kernel > 0.0))
        throw ConvergenceError("theta-series kernel lost positivity", kernel, a);
    const double logv = std::log((1.0 + sq) / (1.0 - sq)) - 3.0 * std::log(x) -
                        (1.0 - sq) * (1.0 - sq) * t + (1.0 - sq) * x + std::log(kernel);
    return DensityValue::from_log(logv,
                                  form == SeriesForm::Direct ? "T1-case3" : "T1-case3-poisson");
}

DensityValue regime4_spectral(double t, double x, const ModelParams& params) {
    if (!(x > 0.0)) throw DomainError("regime4_spectral requires x > 0");
    const singularities::SingularityResult s = singularities::dominant_singularity(x, params);
    if (!(s.f_amp > 0.0))
        throw SolverError("regime4_spectral: non-positive spectral amplitude");
    const double logv = std::log(s.f_amp) + s.r_star * t;
    return DensityValue::from_log(logv, "T1-case4");
}

double f_amp_large_x(double x, const ModelParams& params) {
    const double sq = params.sqrt_rho();
    return 2.0 * kPi * kPi * (1.0 + sq) / (params.rho * (1.0 - sq) * x * x * x) *
           std::exp((1.0 - sq) * x);
}

DensityValue matching_formula(double t, double x, const ModelParams& params) {
    require_support(t, x, "matching_formula");
    const double sq = params.sqrt_rho();
    const double log_amp = std::log(2.0 * kPi * kPi * (1.0 + sq) / (params.rho * (1.0 - sq))) -
                           3.0 * std::log(x) + (1.0 - sq) * x;
    const double logv = log_amp + singularities::r_star_large_x(x, params) * t;
    return DensityValue::from_log(logv, "T1-match");
}

DensityValue gaussian_approx(double t, double x, const ModelParams& params) {
    require_support(t, x, "gaussian_approx");
    const double rho = params.rho;
    const double e = 1.0 - rho;
    const double dev = t - x / e;
    const double logv = 1.5 * std::log(e) - std::log(2.0 * std::sqrt(rho * kPi * x)) -
                        e * e * e / (4.0 * rho * x) * dev * dev;
    return DensityValue::from_log(logv, "gaussian");
}

TailConstants flatto_constants(const ModelParams& params) {
    const double rho = params.rho;
    const double sq = params.sqrt_rho();
    TailConstants c;
    c.A = (1.0 - sq) * (1.0 - sq);
    c.B = 3.0 * std::pow(kPi / 2.0, 2.0 / 3.0) * std::pow(rho, 1.0 / 6.0);
    c.C_star = std::pow(2.0, 2.0 / 3.0) / std::sqrt(3.0) * std::pow(kPi, 5.0 / 6.0) *
               std::pow(rho, -5.0 / 12.0) * (1.0 + sq) / (1.0 - sq) *
               std::exp((1.0 + sq) / (1.0 - sq));
    c.ros_density_factor = c.A * c.C_star / rho;
    return c;
}

double log_flatto_tail(double t, const ModelParams& params) {
    if (!(t > 0.0)) throw DomainError("flatto_tail requires t > 0");
    const TailConstants c = flatto_constants(params);
    return std::log(c.C_star) - 5.0 / 6.0 * std::log(t) - c.A * t - c.B * std::cbrt(t);
}

double flatto_tail(double t, const ModelParams& params) {
    return std::exp(log_flatto_tail(t, params));
}

} // namespace mm1ps::regimes_fixed
