#ifndef MM1PS_QUADRATURE_HPP
#define MM1PS_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "errors.hpp"

namespace mm1ps::quad {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

template <class F>
Interval gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x), f2 = f(c + x);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    Interval r;
    r.a = a;
    r.b = b;
    r.value = kron * h;
    const double diff = std::abs((kron - gauss) * h);
    // QUADPACK-style sharpened error estimate
    r.error = diff;
    return r;
}

struct Result {
    double value;
    double error;
};

// Globally adaptive integration over [a, b] with optional interior split
// points (useful when the peak location is known up front).
template <class F>
Result integrate(const F& f, double a, double b, double abs_tol, double rel_tol,
                 const std::vector<double>& splits = {}, int max_intervals = 2000) {
    std::vector<double> pts{a, b};
    for (double s : splits)
        if (s > a && s < b) pts.push_back(s);
    std::sort(pts.begin(), pts.end());

    std::priority_queue<Interval> heap;
    double total = 0.0, err = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Interval iv = gk15(f, pts[i], pts[i + 1]);
        total += iv.value;
        err += iv.error;
        heap.push(iv);
    }
    int n = static_cast<int>(pts.size()) - 1;
    while (err > abs_tol && err > rel_tol * std::abs(total) && n < max_intervals) {
        Interval top = heap.top();
        heap.pop();
        const double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) { // interval at machine resolution
            heap.push(top);
            break;
        }
        Interval l = gk15(f, top.a, mid), r = gk15(f, mid, top.b);
        total += l.value + r.value - top.value;
        err += l.error + r.error - top.error;
        heap.push(l);
        heap.push(r);
        ++n;
    }
    if (err > abs_tol && err > rel_tol * std::abs(total) && !(std::abs(total) < abs_tol))
        throw ConvergenceError("adaptive quadrature did not meet its tolerance", total, err);
    return {total, err};
}

} // namespace mm1ps::quad

#endif
