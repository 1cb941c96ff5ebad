#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "singularities.hpp"
#include "table1.hpp"

using namespace mm1ps;
namespace sg = mm1ps::singularities;

TEST_CASE("threshold x*") {
    CHECK(sg::x_star(ModelParams(0.3)) == doctest::Approx(0.5335).epsilon(1e-4));
    CHECK(sg::x_star(ModelParams(0.25)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(sg::x_star(ModelParams(0.999999)) < 1e-3);
}

TEST_CASE("reference singularity grid") {
    for (std::size_t i = 0; i < table1::size(); ++i) {
        const table1::Cell& c = table1::cells()[i];
        CAPTURE(c.rho);
        CAPTURE(c.x);
        const auto s = sg::dominant_singularity(c.x, ModelParams(c.rho));
        CHECK(std::fabs(s.u - c.u) <= 1.5e-4);
        CHECK(std::fabs(s.v - c.v) <= 1.5e-4);
    }
}

TEST_CASE("pole condition residual and decay-rate forms") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ur(0.1, 0.9), ux(0.05, 8.0);
    for (int i = 0; i < 40; ++i) {
        const ModelParams p(ur(rng));
        const double x = ux(rng);
        const auto s = sg::dominant_singularity(x, p);
        const std::complex<double> eta(s.u, s.v);
        CHECK(std::abs(sg::eta_denominator(eta, x, p)) < 1e-8);
        const double sq = p.sqrt_rho();
        if (s.u == 0.0)
            CHECK(s.r_star ==
                  doctest::Approx(-1.0 - p.rho + 2.0 * sq * std::cos(s.v)).epsilon(1e-12));
        else
            CHECK(s.r_star ==
                  doctest::Approx(-1.0 - p.rho - 2.0 * sq * std::cosh(s.u)).epsilon(1e-12));
        CHECK(s.r_star < -(1.0 - sq) * (1.0 - sq));
    }
}

TEST_CASE("dominance by grid scan") {
    // no other denominator zero on the strip beats the reported decay rate
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ur(0.15, 0.85), ux(0.1, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ModelParams p(ur(rng));
        const double x = ux(rng);
        const auto dom = sg::dominant_singularity(x, p);
        auto decay = [&](std::complex<double> eta) {
            return (-1.0 - p.rho + 2.0 * p.sqrt_rho() * std::cosh(eta)).real();
        };
        const int nu = 60, nv = 60;
        for (int iu = 0; iu <= nu; ++iu) {
            for (int iv = 1; iv <= nv; ++iv) {
                std::complex<double> eta(4.0 * iu / nu, M_PI * iv / nv);
                // local polish toward the nearest root
                for (int it = 0; it < 30; ++it) {
                    const std::complex<double> d = sg::eta_denominator(eta, x, p);
                    const double h = 1e-7;
                    const std::complex<double> dp =
                        (sg::eta_denominator(eta + h, x, p) - d) / h;
                    if (std::abs(dp) == 0.0) break;
                    const std::complex<double> step = d / dp;
                    eta -= step;
                    if (std::abs(step) < 1e-12) break;
                }
                if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag())) continue;
                if (std::abs(sg::eta_denominator(eta, x, p)) > 1e-9) continue;
                if (std::abs(eta) < 1e-6) continue;          // removable origin
                if (std::fabs(eta.imag()) > M_PI + 1e-9) continue;
                if (std::fabs(eta.imag() - M_PI) < 1e-9 && std::fabs(eta.real()) < 1e-6)
                    continue;                                 // removable corner
                CHECK(decay(eta) <= dom.r_star + 1e-7);
            }
        }
    }
}

TEST_CASE("continuity across the threshold") {
    const ModelParams p(0.3);
    const double xs = sg::x_star(p);
    const auto lo = sg::dominant_singularity(xs * (1.0 - 1e-7), p);
    const auto mid = sg::dominant_singularity(xs, p);
    const auto hi = sg::dominant_singularity(xs * (1.0 + 1e-7), p);
    CHECK(std::fabs(lo.r_star - mid.r_star) < 1e-6);
    CHECK(std::fabs(hi.r_star - mid.r_star) < 1e-6);
    CHECK(mid.r_star == doctest::Approx(-std::pow(1.0 + p.sqrt_rho(), 2)).epsilon(1e-14));
    // closed-form amplitude at the threshold
    const double sq = p.sqrt_rho();
    const double f_star = 6.0 * sq * (1.0 + sq) * (1.0 + sq) / (1.0 + 4.0 * sq + p.rho) *
                          std::exp(1.0 / sq - 1.0);
    CHECK(mid.f_amp == doctest::Approx(f_star).epsilon(1e-12));
    CHECK(lo.f_amp == doctest::Approx(f_star).epsilon(1e-4));
    CHECK(hi.f_amp == doctest::Approx(f_star).epsilon(1e-4));
}

TEST_CASE("decay-rate expansions against the solver") {
    // tolerances follow the first omitted term of each truncation
    const ModelParams p5(0.5);
    {
        // large-x at a point where the series is in its regime
        const double x = 40.0;
        const auto s = sg::dominant_singularity(x, p5);
        const double t2 = M_PI * M_PI / (p5.sqrt_rho() * x * x);
        const double t3 = 2.0 * M_PI * M_PI * (1.0 + p5.sqrt_rho()) /
                          (p5.rho * (1.0 - p5.sqrt_rho()) * x * x * x);
        const double first_omitted = t3 * (t3 / t2); // geometric continuation
        CHECK(std::fabs(sg::r_star_large_x(x, p5) - s.r_star) <= 3.0 * first_omitted);
    }
    {
        // stated point x=10, rho=0.9: the coefficients grow like
        // 1/(1-sqrt(rho)) and the first omitted term is O(1) there
        const ModelParams p9(0.9);
        const double x = 10.0;
        const auto s = sg::dominant_singularity(x, p9);
        const double t2 = M_PI * M_PI / (p9.sqrt_rho() * x * x);
        const double t3 = 2.0 * M_PI * M_PI * (1.0 + p9.sqrt_rho()) /
                          (p9.rho * (1.0 - p9.sqrt_rho()) * x * x * x);
        const double first_omitted = t3 * (t3 / t2);
        CHECK(std::fabs(sg::r_star_large_x(x, p9) - s.r_star) <= 3.0 * first_omitted);
    }
    {
        // small-x form: remainder is O(x^2) with an O(1) coefficient
        const double x = 0.01;
        const auto s = sg::dominant_singularity(x, p5);
        CHECK(std::fabs(sg::r_star_small_x(x, p5) - s.r_star) <= 1e-3);
        // leading term dominates
        CHECK(sg::r_star_small_x(x, p5) == doctest::Approx(std::log(0.5) / x).epsilon(0.05));
    }
    {
        // two-term root estimate; next order is O(x^-3) with coefficient
        // ~ pi (1+sqrt(rho))^2 / (rho^{3/2} (1-sqrt(rho))^2)
        const ModelParams p3(0.3);
        const double x = 10.0;
        const auto s = sg::dominant_singularity(x, p3);
        const double sq = p3.sqrt_rho();
        const double c3 = M_PI * (1.0 + sq) * (1.0 + sq) /
                          (std::pow(p3.rho, 1.5) * (1.0 - sq) * (1.0 - sq)) /
                          (x * x * x);
        CHECK(std::fabs(sg::v_estimate_large_x(x, p3) - s.v) <= 3.0 * c3);
    }
}

TEST_CASE("heavy-traffic roots") {
    // brackets, residuals, and the factorized sub-equations
    for (double X : {0.05, 0.5, 2.0, 10.0, 50.0}) {
        const auto hr = sg::heavy_roots(X, 6);
        for (int n = 1; n <= 6; ++n) {
            const double v = hr.roots[static_cast<size_t>(n - 1)];
            CHECK(v > (n - 1) * M_PI / X);
            CHECK(v < n * M_PI / X);
            CHECK(sg::heavy_root_residual(v, X) <= 1e-12);
            const double c = std::cos(0.5 * X * v), s = std::sin(0.5 * X * v);
            const double f1 = c - 2.0 * v * s, f2 = 2.0 * v * c + s;
            CHECK(std::min(std::fabs(f1), std::fabs(f2)) < 1e-9 * (1.0 + 2.0 * v));
        }
    }
}

TEST_CASE("heavy-root expansions") {
    {
        // first omitted term is ~64 pi / X^4
        const double X = 50.0;
        const double v1 = sg::heavy_roots(X, 1).roots[0];
        const double est = M_PI / X - 4.0 * M_PI / (X * X) + 16.0 * M_PI / (X * X * X);
        CHECK(std::fabs(v1 - est) <= 64.0 * M_PI / (X * X * X * X));
    }
    {
        const double X = 0.01;
        const double v1 = sg::heavy_roots(X, 1).roots[0];
        const double est = 1.0 / std::sqrt(X) - std::sqrt(X) / 24.0 +
                           11.0 / 5760.0 * std::pow(X, 1.5);
        CHECK(std::fabs(v1 - est) <= 1e-4);
    }
    {
        const double X = 0.05;
        const double v2 = sg::heavy_roots(X, 2).roots[1];
        const double est = M_PI / X + 1.0 / M_PI - X / (M_PI * M_PI * M_PI);
        CHECK(std::fabs(v2 - est) <= 1e-3);
    }
}

TEST_CASE("stationary-point map k(X) is increasing") {
    double prev = 0.0;
    for (double X = 0.05; X <= 40.0; X *= 1.3) {
        const double V = sg::heavy_roots(X, 1).roots[0];
        const double k = (X * (1.0 + 4.0 * V * V) + 4.0) /
                         (2.0 * V * V * (1.0 + 4.0 * V * V));
        CHECK(k > prev);
        prev = k;
    }
}

TEST_CASE("psi parametrization") {
    // round trip at psi = 1
    {
        const double t = std::tan(0.5);
        const double sigma = 4.0 * t * t * t * (1.0 + std::sin(1.0));
        const auto pt = sg::psi_from_sigma(sigma);
        CHECK(std::fabs(pt.psi - 1.0) <= 1e-12);
        CHECK(pt.x_tilde == doctest::Approx(2.0 * std::tan(0.5)).epsilon(1e-12));
        CHECK(pt.v_tilde == doctest::Approx(0.5 / std::tan(0.5)).epsilon(1e-12));
    }
    // small-sigma exponent: sigma ~ psi^4, slope 4 in logs
    {
        const double p1 = sg::psi_from_sigma(1e-8).psi;
        const double p2 = sg::psi_from_sigma(1e-10).psi;
        const double slope = (std::log(1e-8) - std::log(1e-10)) / (std::log(p1) - std::log(p2));
        CHECK(slope == doctest::Approx(4.0).epsilon(1e-3));
    }
    // large-sigma corner approach: sigma ~ 32 pi / (pi - psi)^3
    {
        const double sigma = 1e6;
        const double psi = sg::psi_from_sigma(sigma).psi;
        const double est = M_PI - std::cbrt(32.0 * M_PI / sigma);
        CHECK(psi == doctest::Approx(est).epsilon(1e-3));
    }
    // stationarity: x_tilde and v_tilde solve the first-root equation
    {
        const auto pt = sg::psi_from_sigma(3.7);
        const double resid = 1.0 / std::tan(0.5 * pt.x_tilde * pt.v_tilde) - 2.0 * pt.v_tilde;
        CHECK(std::fabs(resid) < 1e-10);
    }
}
