#include "specfun.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace mm1ps::specfun {

namespace {

constexpr double kSeriesAsymptoticSwitch = 15.0;

void check_finite(double z, const char* who) {
    if (!std::isfinite(z)) throw DomainError(std::string(who) + ": non-finite argument");
}

// Ascending power series; all terms positive, so no cancellation.
double i0_series(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double i1_series(double z) {
    const double q = 0.25 * z * z;
    double term = 0.5 * z, sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Large-argument expansion of exp(-z)*I_nu(z), truncated at the smallest
// term.  At the z = 15 switch point the smallest term is ~1e-13 relative.
double ie_asymptotic(int nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::abs(term);
    for (int k = 1; k < 40; ++k) {
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        if (std::abs(term) > prev) break; // divergent tail reached
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * z);
}

} // namespace

double bessel_i0(double z) {
    check_finite(z, "bessel_i0");
    if (z < 0.0) throw DomainError("bessel_i0: negative argument");
    if (z <= kSeriesAsymptoticSwitch) return i0_series(z);
    return std::exp(z) * ie_asymptotic(0, z);
}

double bessel_i1(double z) {
    check_finite(z, "bessel_i1");
    if (z < 0.0) throw DomainError("bessel_i1: negative argument");
    if (z <= kSeriesAsymptoticSwitch) return i1_series(z);
    return std::exp(z) * ie_asymptotic(1, z);
}

double bessel_i0e(double z) {
    check_finite(z, "bessel_i0e");
    if (z < 0.0) throw DomainError("bessel_i0e: negative argument");
    if (z <= kSeriesAsymptoticSwitch) return std::exp(-z) * i0_series(z);
    return ie_asymptotic(0, z);
}

double bessel_i1e(double z) {
    check_finite(z, "bessel_i1e");
    if (z < 0.0) throw DomainError("bessel_i1e: negative argument");
    if (z <= kSeriesAsymptoticSwitch) return std::exp(-z) * i1_series(z);
    return ie_asymptotic(1, z);
}

double log_bessel_i1(double z) {
    check_finite(z, "log_bessel_i1");
    if (z < 0.0) throw DomainError("log_bessel_i1: negative argument");
    if (z == 0.0) return -std::numeric_limits<double>::infinity();
    if (z <= kSeriesAsymptoticSwitch) return std::log(i1_series(z));
    return z + std::log(ie_asymptotic(1, z));
}

double erfc(double z) {
    check_finite(z, "erfc");
    return std::erfc(z);
}

namespace {

// D_0(z)*exp(z^2/4) = 1; D_{-1}(z)*exp(z^2/4) = sqrt(pi/2)*exp(z^2/2)*erfc(z/sqrt(2)).
// The scaled D_{-1} needs care for large positive z (product of a huge
// exponential and a tiny erfc); use the scaled-erfc form there.
double pcf_dm1_scaled(double z) {
    const double inv_sqrt2 = 0.70710678118654752440;
    if (z < 25.0)
        return std::sqrt(M_PI / 2.0) * std::exp(0.5 * z * z) * std::erfc(z * inv_sqrt2);
    // erfcx(x) = exp(x^2) erfc(x) via its asymptotic series, x = z/sqrt(2) >= ~17.7.
    const double x = z * inv_sqrt2;
    double term = 1.0, sum = 1.0;
    const double w = 0.5 / (x * x);
    for (int k = 1; k < 20; ++k) {
        term *= -(2.0 * k - 1.0) * w;
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    const double erfcx = sum / (x * std::sqrt(M_PI));
    return std::sqrt(M_PI / 2.0) * erfcx;
}

// Scaled values u_k = exp(z^2/4) * D_{-k}(z), k = 0..kmax, satisfying
//   u_{k+1} = (u_{k-1} - z*u_k)/k.
// For z >= 0 the wanted sequence is the one that decays fastest downward, so
// plain downward recurrence sheds accuracy like exp(2*z*sqrt(k)).  Running
// the same recurrence upward from a trial pair deep below the target and
// normalizing against the D_0 anchor keeps every value relatively accurate
// (Miller's method).  For z < 0 the roles swap and the direct downward march
// is the stable one.
std::vector<double> pcf_scaled_sequence(int kmax, double z) {
    std::vector<double> u(static_cast<size_t>(kmax) + 1);
    u[0] = 1.0;
    if (kmax >= 1) u[1] = pcf_dm1_scaled(z);
    if (kmax <= 1) return u;

    // Downward loses about exp(2*z*sqrt(kmax)) relative accuracy when z > 0;
    // harmless while that factor stays small.  Near z = 0 the even and odd
    // sub-chains decouple, which rules out the Miller branch there anyway.
    if (z <= 0.0 || 2.0 * z * std::sqrt(static_cast<double>(kmax)) <= 7.0) {
        for (int k = 1; k < kmax; ++k)
            u[static_cast<size_t>(k) + 1] = (u[static_cast<size_t>(k) - 1] - z * u[static_cast<size_t>(k)]) / static_cast<double>(k);
        return u;
    }

    // Miller: run upward from a trial pair deep below the target and
    // normalize on the u_0 anchor.  Start depth gives the unwanted solution
    // a head start of exp(2*z*(sqrt(start)-sqrt(kmax))) >= ~1e17.
    const double target = std::sqrt(static_cast<double>(kmax)) + 20.0 / std::max(z, 1.0);
    const int start = std::max(kmax + 16, static_cast<int>(target * target) + 1);
    std::vector<double> w(static_cast<size_t>(start) + 2);
    w[static_cast<size_t>(start) + 1] = 0.0;
    w[static_cast<size_t>(start)] = 1e-280;
    for (int k = start; k >= 1; --k) {
        // u_{k-1} = k*u_{k+1} + z*u_k
        w[static_cast<size_t>(k) - 1] =
            static_cast<double>(k) * w[static_cast<size_t>(k) + 1] + z * w[static_cast<size_t>(k)];
        if (std::abs(w[static_cast<size_t>(k) - 1]) > 1e250) {
            for (int j = k - 1; j <= start + 1; ++j) w[static_cast<size_t>(j)] *= 1e-250;
        }
    }
    const double scale = 1.0 / w[0];
    for (int k = 0; k <= kmax; ++k) u[static_cast<size_t>(k)] = w[static_cast<size_t>(k)] * scale;
    return u;
}

} // namespace

double pcf_d_scaled(int order, double z) {
    check_finite(z, "pcf_d");
    if (order > 0 || order < pcf_min_order)
        throw UnsupportedError("pcf_d: order must lie in [-64, 0]");
    const int k = -order;
    return pcf_scaled_sequence(k, z)[static_cast<size_t>(k)];
}

double pcf_d(int order, double z) {
    return std::exp(-0.25 * z * z) * pcf_d_scaled(order, z);
}

} // namespace mm1ps::specfun
