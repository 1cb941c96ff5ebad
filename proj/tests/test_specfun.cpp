#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "quadrature.hpp"
#include "specfun.hpp"

using namespace mm1ps;
namespace sf = mm1ps::specfun;

namespace {

// Power-series oracle in long double; the implementation switches to an
// asymptotic branch at z = 15, this one never does.
long double i0_series_ld(long double z) {
    const long double q = 0.25L * z * z;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (term < 1e-25L * sum) break;
    }
    return sum;
}

long double i1_series_ld(long double z) {
    const long double q = 0.25L * z * z;
    long double term = 0.5L * z, sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (term < 1e-25L * sum) break;
    }
    return sum;
}

// D_{-k}(z) by adaptive quadrature of t^{k-1} e^{-zt-t^2/2} (log-scaled to
// dodge overflow in the factorial normalization).
double pcf_quadrature_oracle(int k, double z) {
    REQUIRE(k >= 1);
    const double t_peak = 0.5 * (-z + std::sqrt(z * z + 4.0 * (k - 1)));
    const double t_hi = std::max(t_peak, 1.0) * 12.0 + 30.0 + std::fabs(z);
    double log_norm = -0.25 * z * z - std::lgamma(k);
    auto g = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((k - 1) * std::log(t) - z * t - 0.5 * t * t);
    };
    auto r = quad::integrate(g, 0.0, t_hi, 1e-300, 1e-13,
                             {0.5 * std::max(t_peak, 0.1), std::max(t_peak, 0.1),
                              2.0 * std::max(t_peak, 0.1)},
                             4000);
    return std::exp(log_norm) * r.value;
}

} // namespace

TEST_CASE("modified Bessel I0") {
    CHECK(sf::bessel_i0(0.0) == 1.0);
    CHECK(sf::bessel_i0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-13));
    CHECK(sf::bessel_i0(10.0) == doctest::Approx(2815.716628466254).epsilon(1e-13));
    CHECK_THROWS_AS(sf::bessel_i0(-1.0), DomainError);
    CHECK_THROWS_AS(sf::bessel_i0(std::nan("")), DomainError);

    // switch-point validation against the long-double series oracle
    for (double z : {14.0, 14.9, 15.0, 15.1, 16.0, 25.0, 60.0, 300.0}) {
        const double ref = static_cast<double>(std::exp(-static_cast<long double>(z)) *
                                               i0_series_ld(z));
        CHECK(sf::bessel_i0e(z) == doctest::Approx(ref).epsilon(1e-12));
    }
    // monotone increasing
    double prev = 0.0;
    for (double z = 0.0; z <= 30.0; z += 0.37) {
        const double v = sf::bessel_i0(z);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("modified Bessel I1") {
    CHECK(sf::bessel_i1(0.0) == 0.0);
    CHECK(sf::bessel_i1(2.0) == doctest::Approx(1.5906368546373291).epsilon(1e-13));
    // leading series behavior
    CHECK(sf::bessel_i1(1e-8) == doctest::Approx(0.5e-8).epsilon(1e-10));
    for (double z : {14.5, 15.0, 15.5, 40.0, 200.0}) {
        const double ref = static_cast<double>(std::exp(-static_cast<long double>(z)) *
                                               i1_series_ld(z));
        CHECK(sf::bessel_i1e(z) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(sf::log_bessel_i1(800.0) ==
          doctest::Approx(800.0 + std::log(sf::bessel_i1e(800.0))).epsilon(1e-13));
}

TEST_CASE("I0' = I1 by central differences") {
    for (double z = 0.1; z <= 20.0; z += 0.7) {
        const double h = 1e-6 * std::max(1.0, z);
        const double deriv = (sf::bessel_i0(z + h) - sf::bessel_i0(z - h)) / (2.0 * h);
        CHECK(deriv == doctest::Approx(sf::bessel_i1(z)).epsilon(1e-6));
    }
}

TEST_CASE("erfc basics and symmetry") {
    CHECK(sf::erfc(0.0) == 1.0);
    CHECK(sf::erfc(1.0) == doctest::Approx(0.15729920705028513).epsilon(1e-13));
    CHECK_THROWS_AS(sf::erfc(std::nan("")), DomainError);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double z = u(rng);
        CHECK(sf::erfc(z) + sf::erfc(-z) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(sf::erfc(z) > 0.0);
        CHECK(sf::erfc(z) < 2.0);
    }
    // monotone decreasing (strictly, away from the saturated tails)
    double prev = sf::erfc(-5.2);
    for (double z = -5.1; z <= 5.8; z += 0.1) {
        const double v = sf::erfc(z);
        CHECK(v < prev);
        prev = v;
    }
    // large-z asymptotic shape
    const double z = 5.5;
    CHECK(sf::erfc(z) ==
          doctest::Approx(std::exp(-z * z) / (std::sqrt(M_PI) * z)).epsilon(2e-2));
}

TEST_CASE("parabolic cylinder anchors") {
    for (double w : {-2.0, 0.0, 1.3, 4.5}) {
        CHECK(sf::pcf_d(0, w) == doctest::Approx(std::exp(-0.25 * w * w)).epsilon(1e-14));
    }
    CHECK(sf::pcf_d(-1, 0.0) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(sf::pcf_d(1, 0.0), UnsupportedError);
    CHECK_THROWS_AS(sf::pcf_d(-65, 0.0), UnsupportedError);
}

TEST_CASE("parabolic cylinder vs integral representation") {
    CHECK(sf::pcf_d(-2, 1.5) == doctest::Approx(pcf_quadrature_oracle(2, 1.5)).epsilon(1e-10));
    for (int k : {2, 3, 7, 12, 20}) {
        for (double z : {-4.0, -1.0, 0.0, 0.6, 2.5, 8.0}) {
            const double ref = pcf_quadrature_oracle(k, z);
            CHECK(sf::pcf_d(-k, z) == doctest::Approx(ref).epsilon(1e-9));
        }
    }
    // deep order at large argument (the series evaluator's regime)
    CHECK(sf::pcf_d(-40, 20.0) ==
          doctest::Approx(pcf_quadrature_oracle(40, 20.0)).epsilon(1e-9));
}

TEST_CASE("parabolic cylinder recurrence residual") {
    for (double z = -5.0; z <= 10.0; z += 0.5) {
        for (int nu = -1; nu >= -20; --nu) {
            const double up = sf::pcf_d(nu + 1, z);
            const double mid = sf::pcf_d(nu, z);
            const double dn = sf::pcf_d(nu - 1, z);
            const double resid = up - z * mid + nu * dn;
            const double scale =
                std::max({std::fabs(up), std::fabs(mid), std::fabs(dn)});
            CHECK(std::fabs(resid) <= 1e-10 * scale);
        }
    }
}
