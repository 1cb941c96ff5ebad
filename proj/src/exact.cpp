#include "exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "laplace.hpp"
#include "quadrature.hpp"
#include "singularities.hpp"

namespace mm1ps::exact {

std::complex<double> root_r(std::complex<double> s, const ModelParams& params) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw DomainError("root_r: non-finite argument");
    const double rho = params.rho;
    const std::complex<double> b = 1.0 + rho + s;
    // Principal square root.  On the segment where the radicand is negative
    // the two quadratic roots are swapped by r -> 1/(rho*r), under which the
    // full transform is invariant, so the cut is invisible downstream.
    return (b - std::sqrt(b * b - 4.0 * rho)) / (2.0 * rho);
}

std::complex<double> waiting_lt(std::complex<double> s, double x, const ModelParams& params) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("waiting_lt: service requirement must be finite and >= 0");
    if (x == 0.0) return 1.0;
    const double rho = params.rho;
    const std::complex<double> r = root_r(s, params);
    const std::complex<double> one_minus_rr = 1.0 - rho * r;
    const std::complex<double> one_minus_r = 1.0 - r;
    const std::complex<double> lead = (1.0 - rho) * (1.0 - rho * r * r);
    const std::complex<double> q = x * (1.0 - rho * r * r) / r; // exponent of the echo factor

    if (q.real() < -690.0) {
        // exp(-q) would overflow: the echo term owns the denominator, so
        //   E ~ -lead * exp(-rho(1-r)x + q) / (rho (1-r)^2),
        // whose exponent is hugely negative and underflows cleanly.
        return -lead / (rho * one_minus_r * one_minus_r) *
               std::exp(-rho * one_minus_r * x + q);
    }
    const std::complex<double> num = lead * std::exp(-rho * one_minus_r * x);
    const std::complex<double> den =
        one_minus_rr * one_minus_rr - rho * one_minus_r * one_minus_r * std::exp(-q);
    if (std::abs(den) < 1e-300) {
        std::ostringstream msg;
        msg << "waiting_lt: denominator vanishes near s=(" << s.real() << "," << s.imag()
            << "); nearest singularity estimate r* = "
            << singularities::dominant_singularity(x, params).r_star;
        throw PoleProximityError(msg.str());
    }
    return num / den;
}

double atom_mass(double x, const ModelParams& params) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("atom_mass: service requirement must be finite and >= 0");
    return (1.0 - params.rho) * std::exp(-params.rho * x);
}

double atom_mass_k(int k, double x, const ModelParams& params) {
    if (k < 0) throw DomainError("atom_mass_k: k must be >= 0");
    const double q = params.rho * std::exp(-x * (1.0 + params.rho));
    return atom_mass(x, params) * std::pow(q, k);
}

double atomic_total(double x, const ModelParams& params) {
    const double q = params.rho * std::exp(-x * (1.0 + params.rho));
    return atom_mass(x, params) / (1.0 - q);
}

std::complex<double> atomic_lt(std::complex<double> s, double x, const ModelParams& params) {
    const double c0 = atom_mass(x, params);
    const double q = params.rho * std::exp(-x * (1.0 + params.rho));
    const std::complex<double> zeta = -x * s; // q e^{-xs} = exp(log q + zeta)
    const double logq = std::log(q);
    if (zeta.real() + logq > 690.0) {
        // geometric ratio explodes: 1/(1-Q) ~ -1/Q
        return -c0 * std::exp(-(zeta + logq));
    }
    return c0 / (1.0 - q * std::exp(zeta));
}

namespace {

// k-th term of the geometric (echo) expansion of the transform with the
// front factor e^{-kxs} peeled off, on the branch whose only cut is the
// compact real segment [-(1+sqrt(rho))^2, -(1-sqrt(rho))^2].  The inverse
// of term k is supported on w >= kx, so for any w the continuous density is
// the finite sum of these inverses evaluated at w - kx.
std::complex<double> echo_transform(std::complex<double> s, int k, double x,
                                    const ModelParams& p) {
    const double rho = p.rho;
    const double two_sq = 2.0 * p.sqrt_rho();
    const std::complex<double> b = 1.0 + rho + s;
    const std::complex<double> root = std::sqrt(b - two_sq) * std::sqrt(b + two_sq);
    const std::complex<double> r = (b - root) / (2.0 * rho);
    const std::complex<double> omr = 1.0 - r;
    const std::complex<double> omrr = 1.0 - rho * r;
    std::complex<double> val = (1.0 - rho) * (1.0 - rho * r * r) *
                               std::exp(-rho * omr * x) / (omrr * omrr);
    for (int j = 0; j < k; ++j)
        val *= rho * omr * omr / (omrr * omrr) *
               std::exp(-x * (1.0 + rho - 2.0 * rho * r));
    return val;
}

std::complex<double> k0_transform(std::complex<double> s, double x, const ModelParams& p) {
    return echo_transform(s, 0, x, p);
}

} // namespace

ConditionalDensity::ConditionalDensity(double x, const ModelParams& params,
                                       const InversionConfig& cfg)
    : x_(x), params_(params), cfg_(cfg) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("exact inversion requires x > 0");
    cfg_.validate();
    r_star_ = singularities::dominant_singularity(x_, params_).r_star;
    const double sq = params_.sqrt_rho();
    branch_point_ = -(1.0 - sq) * (1.0 - sq);
}

// Large-s structure of the k-th echo term G_k(s) = c_k + J_k/s + S_k/s^2 + ...
// written with one-sided exponentials of rate theta:
//   G_k(s) ~ mass + jump/(s+theta) + slope/(s+theta)^2.
// mass and jump have closed forms; the slope coefficient is extracted
// numerically from the transform itself (two-point Richardson at large s).
std::vector<FrontCoeffs> ConditionalDensity::front_coeffs(int K, double theta) const {
    const double rho = params_.rho;
    const double q = rho * std::exp(-x_ * (1.0 + rho));
    std::vector<FrontCoeffs> out(static_cast<size_t>(K) + 1);
    auto G_k = [&](int k, double s) {
        // term_k * e^{kxs} via the identity (1 - rho r^2)/r - s = 1 + rho - 2 rho r
        const double b = 1.0 + rho + s;
        const double r = (b - std::sqrt(b * b - 4.0 * rho)) / (2.0 * rho);
        const double num = (1.0 - rho) * (1.0 - rho * r * r) * std::exp(-rho * (1.0 - r) * x_);
        return num * std::pow(rho * (1.0 - r) * (1.0 - r), k) *
               std::exp(-k * x_ * (1.0 + rho - 2.0 * rho * r)) /
               std::pow(1.0 - rho * r, 2 * k + 2);
    };
    double ck = atom_mass(x_, params_);
    for (int k = 0; k <= K; ++k) {
        FrontCoeffs f;
        f.theta = theta;
        f.mass = ck;
        f.jump = ck * (rho * x_ * (1.0 + 2.0 * k) + 2.0 * rho * (k + 1.0) - 2.0 * k);
        if (k > 0) {
            const double s1 = 1e5, s2 = 2e5;
            const double phi1 = s1 * s1 * (G_k(k, s1) - f.mass - f.jump / s1);
            const double phi2 = s2 * s2 * (G_k(k, s2) - f.mass - f.jump / s2);
            const double S = 2.0 * phi2 - phi1;
            f.slope = S + theta * f.jump;
        } else {
            f.jump = 0.0; // the k = 0 edge sits at the boundary, not inside
            f.slope = 0.0;
        }
        out[static_cast<size_t>(k)] = f;
        ck *= q;
    }
    return out;
}

double ConditionalDensity::atom() const { return atom_mass(x_, params_); }

double ConditionalDensity::cdf_continuous(double t) const {
    if (!(t > x_)) return 0.0;
    const double w = t - x_;
    if (w < kMinGap) return 0.0;
    // The atom-free transform divided by s is one degree smoother than the
    // density, and the rational-accelerated vertical contour handles the
    // remaining kinks without any front subtraction.
    auto transform = [this](std::complex<double> s) {
        return (waiting_lt(s, x_, params_) - atomic_lt(s, x_, params_)) / s;
    };
    InversionConfig cfg = cfg_;
    cfg.contour = Contour::Bromwich;
    // distribution values are O(1); the default density tolerance is
    // needlessly strict against the scheme's own plateau here
    cfg.tolerance = std::max(cfg.tolerance, 1e-4); // front kinks cap the local plateau
    const laplace::InvertResult res = laplace::invert(transform, w, cfg, 0.0);
    return res.value;
}

double ConditionalDensity::cdf(double t) const {
    if (!(t >= x_)) return 0.0;
    double steps = 0.0;
    const double q = params_.rho * std::exp(-x_ * (1.0 + params_.rho));
    double ck = atom_mass(x_, params_);
    for (int k = 0; (k + 1) * x_ <= t; ++k) {
        steps += ck;
        ck *= q;
        if (ck < 1e-300) break;
    }
    return steps + cdf_continuous(t);
}

DensityValue ConditionalDensity::operator()(double t) const {
    if (!(t > x_)) throw DomainError("exact inversion requires t > x");
    const double w = t - x_;
    if (w < kMinGap)
        throw DomainError("t - x below 1e-8: use the small-gap Bessel regime formula");

    // Route selection.  On the single-cut branch each echo term of the
    // transform is analytic off the compact segment
    // [-(1+sqrt(rho))^2, -(1-sqrt(rho))^2]; collapsing the Bromwich contour
    // onto the segment turns the inversion into plain quadratures of the
    // cut discontinuity, one per reached front — exact right at the fronts,
    // where the periodic contours lose accuracy.  The integrand peaks near
    // exp(sqrt(rho)(x + 2 floor(w/x) x)) relative to the result, so the
    // route is gated by that cancellation budget; beyond it the large
    // scales belong to the contour schemes anyway.
    const double sq_rho = params_.sqrt_rho();
    const int reach = static_cast<int>(std::floor(w / x_));
    // The echo terms shrink geometrically with ratio q on the cut; truncate
    // once the remaining train is below working precision, and leave the
    // route to the contour schemes when that would take too many terms.
    const double q_train = params_.rho * std::exp(-x_ * (1.0 + params_.rho));
    const int k_needed =
        std::min(reach, static_cast<int>(-34.0 / std::log(q_train)) + 1);
    const double cut_budget =
        sq_rho * x_ * (1.0 + 2.0 * k_needed) + std::pow(1.0 + sq_rho, 2) * w;

    laplace::InvertResult res{};
    if (cfg_.contour != Contour::FixedTalbot && cut_budget <= 22.0 && k_needed <= 128) {
        const double s_minus = branch_point_;
        const double s_plus = -(1.0 + sq_rho) * (1.0 + sq_rho);
        double total = 0.0, err = 0.0;
        const double term_tol = 0.1 * cfg_.tolerance / (k_needed + 1.0);
        for (int k = 0; k <= k_needed; ++k) {
            const double delta = w - k * x_;
            if (delta <= 0.0) continue;
            auto weighted = [&](double sigma) {
                return -echo_transform(std::complex<double>(sigma, 0.0), k, x_, params_)
                            .imag() *
                       std::exp(sigma * delta) / M_PI;
            };
            // the k-th discontinuity winds ~k times along the segment; seed
            // enough panels that the error estimate sees the oscillation
            std::vector<double> seeds;
            const int panels = 2 + 3 * k;
            for (int j = 1; j < panels; ++j)
                seeds.push_back(s_plus + (s_minus - s_plus) * j / panels);
            const quad::Result r =
                quad::integrate(weighted, s_plus, s_minus, term_tol, 1e-11, seeds, 800);
            total += r.value;
            err += r.error;
        }
        res.value = total;
        res.err_est = err;
    } else if (w < x_) {
        // Wrapping contour on the first echo term; a small node count is
        // forced by the branch tip sitting near the origin on the contour's
        // scale.  Serves as the independent second scheme and as the
        // fallback when the cut quadrature's cancellation budget runs out
        // (large x, where the spurious wing terms shrink with the atom
        // weight exp(-rho x)).
        const double a = atom();
        auto transform = [this, a](std::complex<double> s) {
            return k0_transform(s, x_, params_) - a;
        };
        double shift = cfg_.abscissa_shift;
        if (shift == 0.0 && branch_point_ * w < -3.0) shift = -branch_point_;
        InversionConfig small = cfg_;
        small.contour = Contour::FixedTalbot;
        small.nodes = 16;
        res = laplace::invert(transform, w, small, shift);
    } else {
        // Beyond the first echo front: every front k x carries a point mass
        // c_k, a density jump J_k and a slope jump.  Remove all three
        // analytically — the atom as a pure exponential, the jump and slope
        // as matched-decay one-sided exponentials reattached below — leaving
        // a C^1 function whose Fourier series the rational acceleration
        // nails.
        //   - vertical contour: also strip a few unreached fronts, whose
        //     components the line otherwise feels;
        //   - wrapping contour: strip only the reached ones, since a
        //     subtracted future front would grow on the left wings.
        const bool vertical = cfg_.contour == Contour::Bromwich;
        int K = static_cast<int>(std::floor(w / x_));
        if (vertical) K = static_cast<int>(std::floor(2.7 * w / x_)) + 1;
        const double q = params_.rho * std::exp(-x_ * (1.0 + params_.rho));
        if (std::log(q) * K < -700.0) K = static_cast<int>(-700.0 / std::log(q));
        const int K_reach = std::min(K, static_cast<int>(std::floor(w / x_)));
        // Decay faster than the density's own tail, so the reattachment
        // never has to cancel against the inverted remainder at depth.
        const double theta =
            (r_star_ * w < -3.0) ? 1.0 + 2.0 * std::max(1.0, -r_star_) : 1.0;
        const std::vector<FrontCoeffs> fronts = front_coeffs(K, theta);
        auto transform = [this, &fronts](std::complex<double> s) {
            std::complex<double> val = waiting_lt(s, x_, params_);
            for (size_t k = 0; k < fronts.size(); ++k) {
                const FrontCoeffs& f = fronts[k];
                const std::complex<double> front =
                    std::exp(-static_cast<double>(k) * x_ * s);
                const std::complex<double> sp = s + f.theta;
                val -= front * (f.mass + f.jump / sp + f.slope / (sp * sp));
            }
            return val;
        };
        double shift = cfg_.abscissa_shift;
        if (shift == 0.0 && r_star_ * w < -3.0) shift = -r_star_;
        res = laplace::invert(transform, w, cfg_, shift);
        // reattach the subtracted one-sided pieces
        for (int k = 1; k <= K_reach; ++k) {
            const double delta = w - k * x_;
            if (delta <= 0.0) continue;
            const FrontCoeffs& f = fronts[static_cast<size_t>(k)];
            res.value += (f.jump + f.slope * delta) * std::exp(-f.theta * delta);
        }
    }

    double value = res.value;
    if (value < 0.0) {
        if (value < -std::max(cfg_.tolerance, 8.0 * res.err_est))
            throw ConvergenceError("inverted density is negative beyond noise level",
                                   value, res.err_est);
        value = 0.0; // quadrature noise at the support boundary
    }
    return DensityValue::from_value(value, "exact-inversion", res.err_est);
}

DensityValue invert_density(double t, double x, const ModelParams& params,
                            const InversionConfig& cfg) {
    return ConditionalDensity(x, params, cfg)(t);
}

double unconditional_density(double t, const ModelParams& params, const InversionConfig& cfg) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("unconditional_density requires t > 0");
    const double rho = params.rho;
    // Atom lines t = (k+1)x together contribute
    //   sum_k (1-rho) rho^k/(k+1) e^{-(1+rho)t} = -(1-rho) log(1-rho)/rho * e^{-(1+rho)t}
    // (every k-th line lands on the same exponential).
    const double atom_line =
        -(1.0 - rho) * std::log1p(-rho) / rho * std::exp(-(1.0 + rho) * t);

    // The mixture integrand exp(-x)*p(t|x) peaks near x = (2 pi^2/rho)^(1/3) t^(1/3);
    // seed the adaptive rule with splits around that scale.
    const double x_peak = std::cbrt(2.0 * M_PI * M_PI / rho) * std::cbrt(t);
    std::vector<double> splits;
    for (double f : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double p = x_peak * f;
        if (p > 0.0 && p < t) splits.push_back(p);
    }

    const double x_hi = t * (1.0 - 1e-9); // stay clear of the support corner
    // Per-node accuracy beyond ~2e-4 is not needed for the mixture; without
    // this floor the echo-front neighborhoods crossed by the x-grid would
    // reject their honest (and sufficient) local estimates.
    InversionConfig inner = cfg;
    inner.tolerance = std::max(cfg.tolerance, 2e-4);
    auto integrand = [&](double x) -> double {
        if (x <= 0.0 || x >= t) return 0.0;
        if (t - x < kMinGap) return 0.0; // sliver of width 1e-9*t, negligible mass
        ConditionalDensity f(x, params, inner);
        return std::exp(-x) * f(t).continuous;
    };
    const quad::Result r =
        quad::integrate(integrand, 0.0, x_hi, 1e-14 + 1e-8 * atom_line, 1e-7, splits, 4000);
    return atom_line + r.value;
}

} // namespace mm1ps::exact
