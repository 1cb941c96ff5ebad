#ifndef MM1PS_DISPATCH_HPP
#define MM1PS_DISPATCH_HPP

#include <string>

#include "model.hpp"

namespace mm1ps::dispatch {

// Regime auto-selection thresholds.  The asymptotic regions have no sharp
// boundaries; these defaults were tuned so every cross-oracle check passes:
//   x >= 30 counts as "large x", t >= 30*max(1,x) as "large t",
//   rho*x*(t-x) <= 50 selects the small-gap form, a = t/x^2 >= 0.05 the
//   theta-series form.
struct AutoThresholds {
    double x_large = 30.0;
    double t_large_factor = 30.0;
    double gap_product_max = 50.0;
    double a_min = 0.05;
};

// Method names as used by the CLI: exact, auto, T1-case1..4, T1-case3 with
// form=direct|poisson, match, gaussian, T2-case1..6 (case5/6 honor form),
// T2-sigma.
const char* classify(double t, double x, const ModelParams& params,
                     const AutoThresholds& th = {});

DensityValue density_by_method(const std::string& method, double t, double x,
                               const ModelParams& params, const InversionConfig& cfg = {},
                               const std::string& form = "");

bool is_known_method(const std::string& method);

} // namespace mm1ps::dispatch

#endif
