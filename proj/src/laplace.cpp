#include "laplace.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"

namespace mm1ps::laplace {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Largest Talbot node count whose round-off floor (~1e-16*exp(2M/5)) stays
// below ~2e-10 of the transform scale.
constexpr int kTalbotStableMax = 36;
} // namespace

double talbot(const TransformFn& F, double w, int M) {
    // Abate-Valko fixed contour s(theta) = r*theta*(cot(theta) + i).
    const double r = 2.0 * M / (5.0 * w);
    double sum = 0.5 * std::exp(r * w) * F(std::complex<double>(r, 0.0)).real();
    for (int k = 1; k < M; ++k) {
        const double theta = k * kPi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const std::complex<double> s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const std::complex<double> amp = std::exp(s * w) * F(s) * std::complex<double>(1.0, sigma);
        sum += amp.real();
    }
    return sum * r / M;
}

double bromwich_dehoog(const TransformFn& F, double w, int M) {
    // Quotient-difference accelerated Fourier-series inversion on the line
    // Re(s) = gamma, period 2T.  The continued fraction built from the
    // series coefficients is evaluated at z = exp(i pi w / T) with the
    // usual last-term remainder improvement.
    const int n = 2 * M;             // highest sample index
    const double T = 2.0 * w;        // half-period; w sits well inside
    const double tol = 1e-14;
    const double gamma = -0.5 * std::log(tol) / T;

    std::vector<std::complex<double>> a(static_cast<size_t>(n) + 1);
    a[0] = 0.5 * F(std::complex<double>(gamma, 0.0));
    for (int k = 1; k <= n; ++k)
        a[static_cast<size_t>(k)] = F(std::complex<double>(gamma, k * kPi / T));

    // q and e columns of the quotient-difference scheme.
    std::vector<std::vector<std::complex<double>>> e(
        static_cast<size_t>(n) + 1, std::vector<std::complex<double>>(static_cast<size_t>(M) + 1));
    std::vector<std::vector<std::complex<double>>> q(
        static_cast<size_t>(n) + 1, std::vector<std::complex<double>>(static_cast<size_t>(M) + 1));
    for (int i = 0; i < n; ++i) {
        e[static_cast<size_t>(i)][0] = 0.0;
        if (i + 1 <= n)
            q[static_cast<size_t>(i)][1] = a[static_cast<size_t>(i) + 1] / a[static_cast<size_t>(i)];
    }
    e[static_cast<size_t>(n)][0] = 0.0;
    for (int r = 1; r <= M - 1; ++r) {
        for (int i = 2 * (M - r); i >= 0; --i) {
            if (i < 2 * (M - r) && r > 1)
                q[static_cast<size_t>(i)][static_cast<size_t>(r)] =
                    q[static_cast<size_t>(i) + 1][static_cast<size_t>(r) - 1] *
                    e[static_cast<size_t>(i) + 1][static_cast<size_t>(r) - 1] /
                    e[static_cast<size_t>(i)][static_cast<size_t>(r) - 1];
            e[static_cast<size_t>(i)][static_cast<size_t>(r)] =
                q[static_cast<size_t>(i) + 1][static_cast<size_t>(r)] -
                q[static_cast<size_t>(i)][static_cast<size_t>(r)] +
                e[static_cast<size_t>(i) + 1][static_cast<size_t>(r) - 1];
        }
    }

    // Continued-fraction coefficients.
    std::vector<std::complex<double>> d(static_cast<size_t>(n) + 1);
    d[0] = a[0];
    for (int m = 1; m <= M; ++m) {
        d[static_cast<size_t>(2 * m) - 1] = -q[0][static_cast<size_t>(m)];
        d[static_cast<size_t>(2 * m)] = -e[0][static_cast<size_t>(m)];
    }

    // Evaluate by forward recurrence at z = exp(i pi w / T).
    const std::complex<double> z(std::cos(kPi * w / T), std::sin(kPi * w / T));
    std::vector<std::complex<double>> A(static_cast<size_t>(n) + 2), B(static_cast<size_t>(n) + 2);
    A[0] = 0.0;
    B[0] = 1.0;
    A[1] = d[0];
    B[1] = 1.0;
    for (int k = 2; k <= n + 1; ++k) {
        const std::complex<double> dz = d[static_cast<size_t>(k) - 1] * z;
        A[static_cast<size_t>(k)] = A[static_cast<size_t>(k) - 1] + dz * A[static_cast<size_t>(k) - 2];
        B[static_cast<size_t>(k)] = B[static_cast<size_t>(k) - 1] + dz * B[static_cast<size_t>(k) - 2];
    }
    // Remainder improvement of the last convergent.
    const std::complex<double> h2m =
        0.5 * (1.0 + z * (d[static_cast<size_t>(n) - 1] - d[static_cast<size_t>(n)]));
    const std::complex<double> r2m =
        -h2m * (1.0 - std::sqrt(1.0 + z * d[static_cast<size_t>(n)] / (h2m * h2m)));
    A[static_cast<size_t>(n) + 1] =
        A[static_cast<size_t>(n)] + r2m * A[static_cast<size_t>(n) - 1];
    B[static_cast<size_t>(n) + 1] =
        B[static_cast<size_t>(n)] + r2m * B[static_cast<size_t>(n) - 1];

    return std::exp(gamma * w) / T * (A[static_cast<size_t>(n) + 1] / B[static_cast<size_t>(n) + 1]).real();
}

InvertResult invert(const TransformFn& F, double w, const InversionConfig& cfg,
                    double shift) {
    if (!(w > 0.0)) throw DomainError("laplace::invert requires w > 0");
    cfg.validate();

    TransformFn G = F;
    if (shift != 0.0)
        G = [&F, shift](std::complex<double> s) { return F(s - shift); };

    double v1 = 0.0, v2 = 0.0;
    if (cfg.contour == Contour::FixedTalbot) {
        const int m_hi = std::min(cfg.nodes, kTalbotStableMax);
        const int m_2 = m_hi <= 20 ? m_hi + 6 : (2 * m_hi) / 3;
        v1 = talbot(G, w, m_hi);
        v2 = talbot(G, w, m_2);
    } else {
        // order of the rational approximant; 2*order+1 transform samples
        const int m_hi = std::clamp(cfg.nodes, 32, 56);
        const int m_2 = m_hi - 6;
        v1 = bromwich_dehoog(G, w, m_hi);
        v2 = bromwich_dehoog(G, w, m_2);
    }
    if (!std::isfinite(v1) || !std::isfinite(v2))
        throw ConvergenceError("laplace inversion produced a non-finite value", v1, v2);
    const double scale = shift != 0.0 ? std::exp(-shift * w) : 1.0;
    const double err = std::abs(v1 - v2) * scale;
    if (err > cfg.tolerance)
        throw ConvergenceError("laplace inversion resolutions disagree beyond tolerance",
                               v1 * scale, v2 * scale);
    return {v1 * scale, err};
}

} // namespace mm1ps::laplace
