#include "singularities.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "errors.hpp"

namespace mm1ps::singularities {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Phase mismatch of the imaginary-axis pole condition.  Poles of the
// transform at eta = i*v correspond exactly to g(v) being an integer
// multiple of pi (both sides of the squared condition are unimodular there).
double phase_g(double v, double x, double sq) {
    const double c = std::cos(v), s = std::sin(v);
    const double arg1 = std::atan2(sq * s, 1.0 - sq * c);
    const double arg2 = std::atan2(s, sq - c);
    return arg1 - arg2 + sq * x * s;
}

// Log form of the pole condition on the line Im(eta) = pi.
double line_h(double u, double x, double sq) {
    const double e = std::exp(-u);
    return 2.0 * std::log((1.0 + sq * e) / (sq + e)) - 2.0 * sq * x * std::sinh(u);
}

template <class F>
double bisect(const F& f, double lo, double hi, double flo, int iters = 120) {
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Spectral amplitude on the imaginary axis (x > x*), written with the
// tan(.)*cos(.) product expanded so the formula has no removable poles.
double amplitude_v(double v, double x, const ModelParams& p) {
    const double sq = p.sqrt_rho();
    const double rho = p.rho;
    const double c = std::cos(v), s = std::sin(v);
    const double q = 1.0 + rho - 2.0 * sq * c;
    const double theta = sq * x * s;
    const double den = q * q * sq * x * c + (1.0 - rho) * q;
    const double bracket =
        (1.0 - rho) * s * std::sin(theta) + (2.0 * sq - (1.0 + rho) * c) * std::cos(theta);
    return 2.0 * sq * (1.0 - rho) * std::exp((1.0 - sq * c) * x) * s * s * bracket / den;
}

// Same amplitude after (sin v, cos v) -> (i*sinh u, -cosh u) for x < x*.
double amplitude_u(double u, double x, const ModelParams& p) {
    const double sq = p.sqrt_rho();
    const double rho = p.rho;
    const double ch = std::cosh(u), sh = std::sinh(u);
    const double q = 1.0 + rho + 2.0 * sq * ch;
    const double theta = sq * x * sh;
    const double den = -q * q * sq * x * ch + (1.0 - rho) * q;
    const double bracket =
        -(1.0 - rho) * sh * std::sinh(theta) + (2.0 * sq + (1.0 + rho) * ch) * std::cosh(theta);
    return 2.0 * sq * (1.0 - rho) * std::exp((1.0 + sq * ch) * x) * (-sh * sh) * bracket / den;
}

} // namespace

double x_star(const ModelParams& params) {
    const double sq = params.sqrt_rho();
    return (1.0 - sq) / (sq * (1.0 + sq));
}

std::complex<double> eta_denominator(std::complex<double> eta, double x,
                                     const ModelParams& params) {
    const double sq = params.sqrt_rho();
    const std::complex<double> e = std::exp(-eta);
    const std::complex<double> a = 1.0 - sq * e;
    const std::complex<double> b = sq - e;
    return a * a - b * b * std::exp(-2.0 * sq * x * std::sinh(eta));
}

SingularityResult dominant_singularity(double x, const ModelParams& params) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("dominant_singularity requires x > 0");
    const double sq = params.sqrt_rho();
    const double rho = params.rho;
    const double xs = x_star(params);

    SingularityResult out;
    if (std::abs(x - xs) < 1e-9 * std::max(1.0, xs)) {
        // Threshold point: triple zero of the denominator at eta = i*pi.
        out.u = 0.0;
        out.v = kPi;
        out.r_star = -(1.0 + sq) * (1.0 + sq);
        out.f_amp = 6.0 * sq * (1.0 + sq) * (1.0 + sq) / (1.0 + 4.0 * sq + rho) *
                    std::exp(1.0 / sq - 1.0);
        return out;
    }

    if (x > xs) {
        // Dominant pole on the imaginary axis: smallest v in (0, pi) where
        // the phase mismatch hits a multiple of pi.  g(0+) = -pi and g is
        // bounded by pi/2 + sqrt(rho)*x, so a scan resolving that many
        // multiples catches the first crossing.
        auto g = [&](double v) { return phase_g(v, x, sq); };
        const int n_grid = std::max(512, 64 * static_cast<int>(std::ceil(sq * x)));
        double v_root = -1.0;
        double v_prev = 1e-12;
        double g_prev = g(v_prev);
        for (int i = 1; i <= n_grid && v_root < 0.0; ++i) {
            const double v_i = kPi * i / (n_grid + 1);
            const double g_i = g(v_i);
            const double lo = std::min(g_prev, g_i), hi = std::max(g_prev, g_i);
            const int k_lo = static_cast<int>(std::ceil(lo / kPi - 1e-12));
            const int k_hi = static_cast<int>(std::floor(hi / kPi + 1e-12));
            for (int k = k_lo; k <= k_hi; ++k) {
                auto gk = [&](double v) { return g(v) - k * kPi; };
                const double flo = gk(v_prev);
                if (flo == 0.0) {
                    v_root = v_prev;
                    break;
                }
                if ((flo > 0.0) != (gk(v_i) > 0.0)) {
                    v_root = bisect(gk, v_prev, v_i, flo);
                    break;
                }
            }
            v_prev = v_i;
            g_prev = g_i;
        }
        if (v_root < 0.0) {
            // Root trapped between the last grid point and pi (x barely
            // above the threshold): g < 0 there and g -> 0- slope region.
            auto g0 = [&](double v) { return g(v); };
            const double lo = v_prev, hi = kPi * (1.0 - 1e-13);
            const double flo = g0(lo);
            if ((flo > 0.0) != (g0(hi) > 0.0)) {
                v_root = bisect(g0, lo, hi, flo);
            } else {
                std::ostringstream msg;
                msg << "dominant_singularity: no phase crossing found for x=" << x
                    << " rho=" << rho << " (g(" << lo << ")=" << flo << ")";
                throw SolverError(msg.str());
            }
        }
        out.u = 0.0;
        out.v = v_root;
        out.r_star = -1.0 - rho + 2.0 * sq * std::cos(v_root);
        out.f_amp = amplitude_v(v_root, x, params);
        return out;
    }

    // x < x*: unique positive root on the line Im(eta) = pi.  h(0) = 0 with
    // h'(0) > 0 and h -> -infinity, so bracket away from the origin.
    auto h = [&](double u) { return line_h(u, x, sq); };
    // Small-x estimate of the root location steers the initial bracket.
    const double u_guess =
        -std::log(x) + std::log(std::log(1.0 / rho)) - 0.5 * std::log(rho);
    double u_hi = std::max(1.0, u_guess + 2.0);
    while (h(u_hi) > 0.0) {
        u_hi *= 2.0;
        if (u_hi > 1e6) throw SolverError("dominant_singularity: failed to bracket u root");
    }
    // h is positive just right of zero when x < x*, but for x extremely
    // close to the threshold the positive window shrinks with the root;
    // climb a ladder to find a reliably positive left endpoint.
    double u_lo = -1.0, h_lo = 0.0;
    for (double cand : {1e-12, 1e-10, 1e-8, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1}) {
        if (cand >= u_hi) break;
        const double hc = h(cand);
        if (hc > 0.0) {
            u_lo = cand;
            h_lo = hc;
        } else if (u_lo > 0.0) {
            u_hi = cand; // already past the root
            break;
        }
    }
    if (u_lo < 0.0) {
        // Root indistinguishable from the threshold degeneracy.
        out.u = 0.0;
        out.v = kPi;
        out.r_star = -(1.0 + sq) * (1.0 + sq);
        out.f_amp = 6.0 * sq * (1.0 + sq) * (1.0 + sq) / (1.0 + 4.0 * sq + rho) *
                    std::exp(1.0 / sq - 1.0);
        return out;
    }
    const double u_root = bisect(h, u_lo, u_hi, h_lo);
    out.u = u_root;
    out.v = kPi;
    out.r_star = -1.0 - rho - 2.0 * sq * std::cosh(u_root);
    out.f_amp = amplitude_u(u_root, x, params);
    return out;
}

double r_star_large_x(double x, const ModelParams& params) {
    if (!(x > 0.0)) throw DomainError("r_star_large_x requires x > 0");
    const double sq = params.sqrt_rho();
    const double rho = params.rho;
    return -(1.0 - sq) * (1.0 - sq) - kPi * kPi / (sq * x * x) +
           2.0 * kPi * kPi * (1.0 + sq) / (rho * (1.0 - sq) * x * x * x);
}

double r_star_small_x(double x, const ModelParams& params) {
    if (!(x > 0.0)) throw DomainError("r_star_small_x requires x > 0");
    const double rho = params.rho;
    const double lr = std::log(rho);
    const double c0 = lr / x;
    const double c1 = -(1.0 + rho + 2.0 * (1.0 - rho) / lr);
    const double c2 = (2.0 * rho * lr * lr + (rho * rho - 1.0) * lr -
                       4.0 * (1.0 - rho) * (1.0 - rho)) /
                      (lr * lr * lr);
    return c0 + c1 + c2 * x;
}

double v_estimate_large_x(double x, const ModelParams& params) {
    const double sq = params.sqrt_rho();
    const double rho = params.rho;
    return kPi / (sq * x) - kPi * (1.0 + sq) / (rho * (1.0 - sq) * x * x);
}

double heavy_root_residual(double v, double X) {
    const std::complex<double> iv(0.0, v);
    const std::complex<double> lhs = (2.0 * iv + 1.0) / (2.0 * iv - 1.0);
    return std::abs(lhs * lhs - std::exp(-2.0 * iv * X));
}

HeavyRoots heavy_roots(double X, int count) {
    if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("heavy_roots requires X > 0");
    if (count < 1) throw DomainError("heavy_roots requires count >= 1");
    HeavyRoots out;
    out.X = X;
    out.roots.reserve(static_cast<size_t>(count));
    for (int n = 1; n <= count; ++n) {
        const double lo = (n - 1) * kPi / X, hi = n * kPi / X;
        const double pad = (hi - lo) * 1e-13 + 1e-300;
        // The factorized condition alternates between the cot and tan
        // sub-equations from bracket to bracket; probe both rather than
        // assuming the parity.
        auto f_cot = [&](double v) { return std::cos(0.5 * X * v) / std::sin(0.5 * X * v) - 2.0 * v; };
        auto f_tan = [&](double v) { return std::tan(0.5 * X * v) + 2.0 * v; };
        double root = -1.0;
        {
            const double a = lo + pad, b = hi - pad;
            const double fa = f_cot(a);
            if (std::isfinite(fa) && (fa > 0.0) != (f_cot(b) > 0.0))
                root = bisect(f_cot, a, b, fa);
            else {
                const double ga = f_tan(a);
                if (std::isfinite(ga) && (ga > 0.0) != (f_tan(b) > 0.0))
                    root = bisect(f_tan, a, b, ga);
            }
        }
        if (root < 0.0) {
            std::ostringstream msg;
            msg << "heavy_roots: no root bracketed in window " << n << " for X=" << X;
            throw SolverError(msg.str());
        }
        out.roots.push_back(root);
    }
    return out;
}

PsiPoint psi_from_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw DomainError("psi_from_sigma requires sigma > 0");
    auto f = [](double psi) {
        const double t = std::tan(0.5 * psi);
        return 4.0 * t * t * t * (psi + std::sin(psi));
    };
    // sigma ~ psi^4 near zero; bracket multiplicatively so tiny sigma keeps
    // full relative precision.
    double lo, hi;
    if (sigma < 1.0) {
        const double guess = std::pow(sigma, 0.25);
        lo = 0.1 * guess;
        hi = std::min(kPi * 0.9, 10.0 * guess);
        while (f(hi) < sigma) hi = 0.5 * (hi + kPi);
    } else {
        lo = 0.5;
        hi = kPi * (1.0 - 1e-14);
    }
    auto g = [&](double psi) { return f(psi) - sigma; };
    double psi = bisect(g, lo, hi, g(lo), 200);
    // Newton polish; derivative is available in closed form.
    for (int i = 0; i < 4; ++i) {
        const double t = std::tan(0.5 * psi);
        const double sec2 = 1.0 + t * t;
        const double fp = 4.0 * (1.5 * t * t * sec2 * (psi + std::sin(psi)) +
                                 t * t * t * (1.0 + std::cos(psi)));
        const double step = (f(psi) - sigma) / fp;
        const double next = psi - step;
        if (next > 0.0 && next < kPi) psi = next;
    }
    PsiPoint p;
    p.psi = psi;
    p.sigma = sigma;
    p.x_tilde = 2.0 * psi * std::tan(0.5 * psi);
    p.v_tilde = 0.5 / std::tan(0.5 * psi);
    return p;
}

} // namespace mm1ps::singularities
