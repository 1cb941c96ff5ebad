#ifndef MM1PS_SPECFUN_HPP
#define MM1PS_SPECFUN_HPP

namespace mm1ps::specfun {

// Modified Bessel functions of the first kind, orders 0 and 1, for z >= 0.
double bessel_i0(double z);
double bessel_i1(double z);

// Exponentially scaled variants exp(-z)*I(z); safe for large z.
double bessel_i0e(double z);
double bessel_i1e(double z);

// log I1(z); usable where I1 itself overflows.
double log_bessel_i1(double z);

// Complementary error function.  Thin wrapper so every caller in this
// project goes through one audited entry point.
double erfc(double z);

// Parabolic cylinder function D_order(z) for integer order in [-64, 0].
double pcf_d(int order, double z);

// exp(z^2/4) * D_order(z); the natural scale for series work where the
// common Gaussian factor is applied once outside.
double pcf_d_scaled(int order, double z);

inline constexpr int pcf_min_order = -64;

} // namespace mm1ps::specfun

#endif
