#ifndef MM1PS_LAPLACE_HPP
#define MM1PS_LAPLACE_HPP

#include <complex>
#include <functional>

#include "model.hpp"

namespace mm1ps::laplace {

using TransformFn = std::function<std::complex<double>(std::complex<double>)>;

struct InvertResult {
    double value;   // f(w)
    double err_est; // absolute, from two-resolution agreement
};

// Fixed-Talbot evaluation with M nodes of the Bromwich integral of F at w>0.
// All singularities of F must lie on or near the negative real axis.
double talbot(const TransformFn& F, double w, int M);

// Shifted-Bromwich evaluation with de Hoog's quotient-difference rational
// acceleration of the Fourier series, order M (2M+1 transform samples).
// The rational approximants also capture the slowly decaying oscillatory
// tail produced by jumps of f beyond w, which plain Euler summation cannot.
double bromwich_dehoog(const TransformFn& F, double w, int M);

// Inversion with an exponential shift: computes exp(-shift*w) * g(w) where
// g is the inverse transform of s -> F(s - shift).  Shifting by (minus) the
// dominant singularity keeps deep-tail inversions well conditioned: without
// it the quadrature's round-off floor buries any value smaller than
// ~1e-10 of the transform scale.
//
// The error estimate compares two resolutions.  For Talbot both node counts
// are clamped to the binary64-stable window (the round-off floor grows like
// exp(0.4*M), so node counts past ~36 make answers worse, not better).
InvertResult invert(const TransformFn& F, double w, const InversionConfig& cfg,
                    double shift);

} // namespace mm1ps::laplace

#endif
