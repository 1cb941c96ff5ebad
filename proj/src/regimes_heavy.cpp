#include "regimes_heavy.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "laplace.hpp"
#include "singularities.hpp"
#include "specfun.hpp"

namespace mm1ps::regimes_heavy {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_pos(double v, const char* who, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(who) + ": " + what + " must be positive and finite");
}
} // namespace

HeavyScales HeavyScales::from_unscaled(double t, double x, double eps) {
    require_pos(eps, "HeavyScales", "eps");
    HeavyScales h;
    h.t = t;
    h.x = x;
    h.eps = eps;
    h.T = eps * t;
    h.X = eps * x;
    h.Z = h.X / std::sqrt(eps);
    h.Theta = eps * h.T;
    h.sigma = eps * h.Theta;
    h.T_star = (h.T - h.X) / (eps * eps);
    return h;
}

HeavyScales HeavyScales::from_T_X(double T, double X, double eps) {
    HeavyScales h = from_unscaled(T / eps, X / eps, eps);
    h.T = T;
    h.X = X;
    h.Z = X / std::sqrt(eps);
    h.Theta = eps * T;
    h.sigma = eps * h.Theta;
    h.T_star = (T - X) / (eps * eps);
    return h;
}

HeavyScales HeavyScales::from_Theta_X(double Theta, double X, double eps) {
    HeavyScales h = from_T_X(Theta / eps, X, eps);
    h.Theta = Theta;
    h.sigma = eps * Theta;
    return h;
}

HeavyScales HeavyScales::from_sigma_X(double sigma, double X, double eps) {
    HeavyScales h = from_Theta_X(sigma / eps, X, eps);
    h.sigma = sigma;
    return h;
}

DensityValue ht_case1(double t, double x, double eps, const InversionConfig& cfg) {
    require_pos(x, "ht_case1", "x");
    require_pos(eps, "ht_case1", "eps");
    if (!(t > x)) throw DomainError("ht_case1 requires t > x");
    const double w = t - x;
    if (w < 1e-8)
        throw DomainError("ht_case1: t - x below 1e-8, use the small-gap Bessel form");
    // The limit transform inherits the echo fronts at t = (k+1)x: point
    // masses e^{-x(2k+1)} and density jumps of size c_k*(x(1+2k)+2).
    // Subtract both analytically, as in the exact module, and reattach the
    // one-sided exponentials afterwards.
    const double c0 = std::exp(-x);
    const double q = std::exp(-2.0 * x);
    int K = static_cast<int>(std::floor(2.7 * w / x)) + 1;
    if (std::log(q) * K < -700.0) K = static_cast<int>(-700.0 / std::log(q));
    const int K_reach = static_cast<int>(std::floor(w / x));
    auto jump = [x](int k, double ck) { return ck * (x * (1.0 + 2.0 * k) + 2.0); };
    auto transform = [x, c0, q, K, &jump](std::complex<double> s) {
        const std::complex<double> r0 = 0.5 * (s + 2.0 - std::sqrt(s * s + 4.0 * s));
        const std::complex<double> omr = 1.0 - r0;
        const std::complex<double> pq = x * (1.0 - r0 * r0) / r0;
        std::complex<double> val;
        if (pq.real() < -690.0) {
            val = -(1.0 + r0) / omr * std::exp(-omr * x + pq);
        } else {
            const std::complex<double> num = (1.0 - r0 * r0) * std::exp(-omr * x);
            val = num / (omr * omr * (1.0 - std::exp(-pq)));
        }
        double ck = c0;
        for (int k = 0; k <= K; ++k) {
            const std::complex<double> front = std::exp(-static_cast<double>(k) * x * s);
            val -= ck * front;
            if (k > 0) val -= jump(k, ck) * front / (s + 1.0);
            ck *= q;
        }
        return val;
    };
    InversionConfig vertical_cfg = cfg;
    vertical_cfg.contour = Contour::Bromwich;
    vertical_cfg.tolerance = cfg.tolerance / eps; // result is scaled by eps below
    laplace::InvertResult res = laplace::invert(transform, w, vertical_cfg, 0.0);
    double ck = c0 * q;
    for (int k = 1; k <= K_reach; ++k) {
        if (k * x < w) res.value += jump(k, ck) * std::exp(-(w - k * x));
        ck *= q;
    }
    double value = eps * res.value;
    if (value < 0.0 && value > -std::max(cfg.tolerance, 8.0 * eps * res.err_est)) value = 0.0;
    DensityValue d = DensityValue::from_value(value, "T2-case1", eps * res.err_est);
    d.atom = eps * c0;
    return d;
}

DensityValue ht_case2(double T, double x, double eps) {
    require_pos(x, "ht_case2", "x");
    require_pos(eps, "ht_case2", "eps");
    if (!(T > 0.0)) throw DomainError("ht_case2 requires T > 0");
    const double lead = eps / x * std::exp(-T / x);
    const double corr =
        eps * eps * (x + 3.0) / 6.0 * (2.0 * x - T) / (x * x) * std::exp(-T / x);
    return DensityValue::from_value(lead + corr, "T2-case2");
}

double ht_case2_mass_deficit(double x, double eps) {
    return -(x + 3.0) / 6.0 * eps * eps;
}

DensityValue ht_case3(double X, double T_star, double eps) {
    require_pos(X, "ht_case3", "X");
    require_pos(T_star, "ht_case3", "T*");
    require_pos(eps, "ht_case3", "eps");
    const double z = 2.0 * std::sqrt(X * T_star);
    const double logv =
        -X / eps + X + 0.5 * std::log(X / T_star) + specfun::log_bessel_i1(z);
    return DensityValue::from_log(logv, "T2-case3");
}

DensityValue ht_case4(double T, double X, double eps) {
    require_pos(X, "ht_case4", "X");
    require_pos(eps, "ht_case4", "eps");
    if (!(T > X)) throw DomainError("ht_case4 requires T > X");
    const double root = std::sqrt(T * (T - X));
    const double logv = 1.5 * std::log(eps) +
                        2.0 * std::log(std::sqrt(T) + std::sqrt(T - X)) -
                        std::log(2.0 * std::sqrt(kPi)) - 0.75 * std::log(T) -
                        0.75 * std::log(T - X) + (T - root) +
                        (2.0 * root + X - 2.0 * T) / eps;
    return DensityValue::from_log(logv, "T2-case4");
}

DensityValue ht_case5(double T, double Z, double eps, SeriesForm form) {
    require_pos(T, "ht_case5", "T");
    require_pos(Z, "ht_case5", "Z");
    require_pos(eps, "ht_case5", "eps");
    double value = 0.0;
    if (form == SeriesForm::Direct) {
        double sum = 0.0;
        for (int n = 0; n < 400; ++n) {
            const double m = 2.0 * n + 1.0;
            const double term = std::exp(-m * m * Z * Z / (4.0 * T));
            sum += term;
            if (n >= 1 && term < 1e-16 * sum) break;
        }
        value = 2.0 * std::pow(eps, 1.5) / std::sqrt(kPi * T) * sum;
    } else {
        // Dual form; the exponent is the Poisson transform of the direct
        // series, decaying like exp(-n^2 pi^2 T / Z^2).
        double sum = 1.0;
        double sign = -1.0;
        for (int n = 1; n < 400; ++n, sign = -sign) {
            const double term = sign * 2.0 * std::exp(-n * n * kPi * kPi * T / (Z * Z));
            sum += term;
            if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        }
        value = std::pow(eps, 1.5) / Z * sum;
    }
    return DensityValue::from_value(value,
                                    form == SeriesForm::Direct ? "T2-case5" : "T2-case5-poisson");
}

double f_tilde(double X, double v) {
    const double v2 = v * v;
    const double q = 4.0 * v2 + 1.0;
    return 8.0 * v2 * ((4.0 * v2 - 1.0) * std::cos(X * v) + 4.0 * v * std::sin(X * v)) /
           (q * (q * X + 4.0)) * std::exp(0.5 * X);
}

namespace {

// Contour quadrature of the case-6 Bromwich integral on the vertical line
// Re(xi) = 1/(2*Theta), with a sinh stretch of the imaginary coordinate and
// step halving until two resolutions agree.
double case6_integral(double Theta, double X) {
    const double c = 0.5 / Theta;
    const double gamma = 1.0 / Theta;
    auto g = [&](double y) -> std::complex<double> {
        const std::complex<double> xi(c, y);
        const std::complex<double> q = std::sqrt(xi);
        const std::complex<double> a = 1.0 + 2.0 * q, b = 1.0 - 2.0 * q;
        const std::complex<double> den = a * a - b * b * std::exp(-2.0 * q * X);
        return std::exp(xi * Theta) * q * std::exp(-q * X) / den;
    };
    // Integrand support: |g| ~ exp(-X*sqrt(y/2)); negligible once
    // X*sqrt(y/2) exceeds ~42.
    const double y_max = 2.0 * std::pow(42.0 / X, 2.0) + 64.0 / Theta;
    const double u_max = std::asinh(y_max / gamma);

    auto sum_at = [&](double h) {
        double acc = 0.5 * g(0.0).real(); // u = 0 node; the fold to [0,inf) doubled elsewhere
        for (int j = 1;; ++j) {
            const double u = j * h;
            if (u > u_max) break;
            acc += g(gamma * std::sinh(u)).real() * std::cosh(u);
            if (j > 4000000) throw ConvergenceError("case6 integral: too many nodes", acc, h);
        }
        return acc * h * gamma / kPi;
    };
    double h = 0.1;
    double prev = sum_at(h);
    double best_diff = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 8; ++iter) {
        h *= 0.5;
        const double cur = sum_at(h);
        best_diff = std::abs(cur - prev);
        if (best_diff <= 1e-8 * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    if (best_diff <= 1e-6 * std::max(std::abs(prev), 1e-300)) return prev;
    throw ConvergenceError("case6 integral: step halving did not converge", prev, best_diff);
}

// Parabolic-cylinder series; all D values enter on the exp(z^2/4) scale so
// each n-term carries a single explicit exponent (n+1)X - z_n^2/2 <= 0.
double case6_pcf_sum(double Theta, double X) {
    const double s2t = std::sqrt(2.0 * Theta);
    double sum = 0.0;
    for (int n = 0; n <= 30; ++n) {
        const double zn = ((2.0 * n + 1.0) * X + Theta) / s2t;
        const double expo = (n + 1.0) * X - 0.5 * zn * zn;
        if (n >= 1 && expo < std::log(std::max(std::abs(sum), 1e-300)) - 37.0) break;
        // scaled D_{-l}(z_n) for l = 0 .. 2n+2
        std::vector<double> dh(static_cast<size_t>(2 * n) + 3);
        for (int l = 0; l <= 2 * n + 2; ++l) dh[static_cast<size_t>(l)] = specfun::pcf_d_scaled(-l, zn);
        double bracket = 0.0, binom = 1.0;
        double tp = 1.0; // (2 Theta)^{l/2}
        double sign = 1.0;
        for (int l = 0; l <= 2 * n; ++l) {
            const double piece = 4.0 / s2t * dh[static_cast<size_t>(l)] -
                                 4.0 * dh[static_cast<size_t>(l) + 1] +
                                 s2t * dh[static_cast<size_t>(l) + 2];
            bracket += sign * binom * tp * piece;
            binom = binom * (2 * n - l) / (l + 1.0);
            tp *= s2t;
            sign = -sign;
        }
        const double term = std::exp(expo) * bracket;
        sum += term;
        if (n >= 1 && std::abs(term) < 1e-14 * std::max(std::abs(sum), 1e-300)) break;
        if (n == 30)
            throw ConvergenceError(
                "case6 pcf series: not converged at the 30-term cap; use the spectral form",
                sum, term);
    }
    return sum / std::sqrt(2.0 * kPi);
}

double case6_spectral_sum(double Theta, double X, double eps) {
    int count = 8;
    double sum = 0.0;
    for (;;) {
        const singularities::HeavyRoots hr = singularities::heavy_roots(X, count);
        sum = 0.0;
        bool converged = false;
        for (int n = 0; n < count; ++n) {
            const double v = hr.roots[static_cast<size_t>(n)];
            const double rate = -(v * v + 0.25) * (1.0 + 0.5 * eps);
            const double term = f_tilde(X, v) * std::exp(rate * Theta);
            sum += term;
            if (n >= 1 && std::abs(term) < 1e-14 * std::max(std::abs(sum), 1e-300)) {
                converged = true;
                break;
            }
        }
        if (converged || count >= 512) break;
        count *= 2;
    }
    return sum;
}

} // namespace

double ht_case6_n0_closed(double Theta, double X, double eps) {
    // First geometric-series term of the contour integral in closed form:
    //   J = e^{-X^2/(4T)}/(4 sqrt(pi T)) + sqrt(T) e^{-X^2/(4T)}/(8 sqrt(pi))
    //       - ((4+X+T)/16) e^{T/4} e^{X/2} erfc((X+T)/(2 sqrt(T)))
    // (T = Theta).  The full n=0 parabolic-cylinder term equals
    // 8 eps^2 e^{X/2 - Theta/4} J identically.
    const double w = (X + Theta) / (2.0 * std::sqrt(Theta));
    const double gauss = std::exp(-X * X / (4.0 * Theta));
    const double J = gauss / (4.0 * std::sqrt(kPi * Theta)) +
                     std::sqrt(Theta) / (8.0 * std::sqrt(kPi)) * gauss -
                     (4.0 + X + Theta) / 16.0 * std::exp(0.25 * Theta + 0.5 * X) *
                         specfun::erfc(w);
    return 8.0 * eps * eps * std::exp(0.5 * X - 0.25 * Theta) * J;
}

double ht_case6_limit_large_X(double Theta, double X, double eps) {
    return 2.0 * eps * eps / std::sqrt(kPi * Theta) *
           std::exp(0.5 * X - 0.25 * Theta - X * X / (4.0 * Theta));
}

DensityValue ht_case6(double Theta, double X, double eps, Case6Form form) {
    require_pos(Theta, "ht_case6", "Theta");
    require_pos(X, "ht_case6", "X");
    require_pos(eps, "ht_case6", "eps");
    switch (form) {
        case Case6Form::Integral: {
            const double I = case6_integral(Theta, X);
            const double value =
                8.0 * eps * eps * std::exp(0.5 * X - 0.25 * Theta) * I;
            return DensityValue::from_value(value, "T2-case6-integral");
        }
        case Case6Form::PcfSeries: {
            const double S = case6_pcf_sum(Theta, X);
            const double value = eps * eps * S;
            return DensityValue::from_value(value, "T2-case6-pcf");
        }
        case Case6Form::Spectral: {
            const double S = case6_spectral_sum(Theta, X, eps);
            const double value = eps * eps * S;
            return DensityValue::from_value(value, "T2-case6-spectral");
        }
    }
    throw DomainError("ht_case6: unknown form");
}

DensityValue ht_sigma_scale(double sigma, double X, double eps) {
    require_pos(sigma, "ht_sigma_scale", "sigma");
    require_pos(X, "ht_sigma_scale", "X");
    require_pos(eps, "ht_sigma_scale", "eps");
    const double v1 = singularities::heavy_roots(X, 1).roots[0];
    const double rate = -(v1 * v1 + 0.25) * (1.0 + 0.5 * eps);
    const double amp = f_tilde(X, v1);
    if (!(amp > 0.0)) throw SolverError("ht_sigma_scale: non-positive mode amplitude");
    const double logv = 2.0 * std::log(eps) + std::log(amp) + rate * sigma / eps;
    return DensityValue::from_log(logv, "T2-sigma");
}

double log_morrison_density(double sigma, double eps) {
    require_pos(sigma, "morrison_density", "sigma");
    require_pos(eps, "morrison_density", "eps");
    const singularities::PsiPoint p = singularities::psi_from_sigma(sigma);
    const double half = 0.5 * p.psi;
    const double tan_h = std::tan(half);
    const double cot_h = 1.0 / tan_h;
    const double csc2 = 1.0 / (std::sin(half) * std::sin(half));
    const double F0 = 2.0 * p.psi * tan_h + 0.25 * sigma * csc2;
    const double F1 = -p.psi * tan_h + 0.125 * sigma * csc2;
    const double c4 = std::pow(std::cos(half), 4.0);
    const double F0pp =
        (3.0 * cot_h * (p.psi + std::sin(p.psi)) + 4.0 * c4) / (2.0 * c4);
    return 0.5 * std::log(2.0 * kPi) + 1.5 * std::log(eps) + std::log(cot_h) -
           0.5 * std::log(F0pp) - F0 / eps - F1;
}

double morrison_density(double sigma, double eps) {
    return std::exp(log_morrison_density(sigma, eps));
}

MorrisonTail morrison_tail_constants(double eps) {
    require_pos(eps, "morrison_tail_constants", "eps");
    if (!(eps < 1.0)) throw DomainError("morrison_tail_constants requires eps < 1");
    MorrisonTail m;
    m.log_alpha_star = 14.0 / 3.0 * std::log(2.0) - 0.5 * std::log(3.0) +
                       5.0 / 6.0 * std::log(kPi) - 3.0 * std::log(eps) + 4.0 / eps - 2.0;
    m.alpha_star = std::exp(m.log_alpha_star);
    m.beta_star = eps * eps / 4.0 + eps * eps * eps / 8.0;
    m.gamma_star = 3.0 * std::pow(kPi / 2.0, 2.0 / 3.0) * (1.0 - eps / 6.0);
    return m;
}

} // namespace mm1ps::regimes_heavy
