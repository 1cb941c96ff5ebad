#ifndef MM1PS_MODEL_HPP
#define MM1PS_MODEL_HPP

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace mm1ps {

// Service rate is fixed at mu = 1 throughout, so the arrival rate equals the
// traffic intensity rho.
struct ModelParams {
    double rho;
    double epsilon; // 1 - rho, kept explicitly so heavy-traffic code never recomputes it

    explicit ModelParams(double rho_) : rho(rho_), epsilon(1.0 - rho_) {
        if (!(rho > 0.0) || !(rho < 1.0) || !std::isfinite(rho))
            throw DomainError("traffic intensity must satisfy 0 < rho < 1");
    }

    static ModelParams from_epsilon(double eps) {
        if (!(eps > 0.0) || !(eps < 1.0) || !std::isfinite(eps))
            throw DomainError("heavy-traffic parameter must satisfy 0 < eps < 1");
        ModelParams p(1.0 - eps);
        p.epsilon = eps;
        return p;
    }

    double sqrt_rho() const { return std::sqrt(rho); }
};

enum class Contour {
    FixedTalbot,
    Bromwich,
};

struct InversionConfig {
    // The sojourn law has point masses and density jumps at every multiple
    // of x, so the atom-subtracted transform keeps oscillatory echo
    // components; the vertical contour with rational series acceleration
    // handles those uniformly and is the default.  The wrapping Talbot
    // contour remains available as the independent second scheme; it is the
    // preferred route for t - x < x and valid away from the echo fronts
    // beyond.
    Contour contour = Contour::Bromwich;
    int nodes = 48;
    // Exponential shift: the inversion runs on exp(shift*w)*f(w) and scales
    // back, which keeps deep-tail values representable.  0 = pick
    // automatically from the dominant singularity.
    double abscissa_shift = 0.0;
    double tolerance = 1e-9; // absolute, checked by two-resolution agreement

    void validate() const {
        if (nodes < 16) throw DomainError("inversion config requires nodes >= 16");
        if (!(tolerance > 0.0)) throw DomainError("inversion tolerance must be positive");
    }
};

struct DensityValue {
    double continuous = 0.0;     // density of the continuous part at the queried time
    double atom = 0.0;           // point mass at t == x; zero when t != x is queried
    double err_est = 0.0;        // absolute error estimate where available
    // log of the continuous part, kept separately because several regime
    // formulas are representable only in logs (exponents below -745).
    double log_continuous = -std::numeric_limits<double>::infinity();
    const char* regime = "";

    static DensityValue from_log(double logval, const char* tag, double err = 0.0) {
        DensityValue d;
        d.log_continuous = logval;
        d.continuous = std::exp(logval);
        d.err_est = err;
        d.regime = tag;
        return d;
    }

    static DensityValue from_value(double val, const char* tag, double err = 0.0) {
        DensityValue d;
        d.continuous = val;
        d.log_continuous = val > 0.0 ? std::log(val)
                                     : -std::numeric_limits<double>::infinity();
        d.err_est = err;
        d.regime = tag;
        return d;
    }
};

} // namespace mm1ps

#endif
