#include "dispatch.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "exact.hpp"
#include "regimes_fixed.hpp"
#include "regimes_heavy.hpp"

namespace mm1ps::dispatch {

const char* classify(double t, double x, const ModelParams& params,
                     const AutoThresholds& th) {
    if (x >= th.x_large) {
        if (params.rho * x * (t - x) <= th.gap_product_max) return "T1-case1";
        if (t >= th.a_min * x * x) return "T1-case3";
        return "T1-case2";
    }
    if (t >= th.t_large_factor * std::max(1.0, x)) return "T1-case4";
    return "exact";
}

namespace {

regimes_fixed::SeriesForm fixed_form(const std::string& form) {
    if (form.empty() || form == "direct") return regimes_fixed::SeriesForm::Direct;
    if (form == "poisson") return regimes_fixed::SeriesForm::Poisson;
    throw DomainError("unknown series form: " + form);
}

regimes_heavy::SeriesForm heavy_form(const std::string& form) {
    if (form.empty() || form == "direct") return regimes_heavy::SeriesForm::Direct;
    if (form == "poisson") return regimes_heavy::SeriesForm::Poisson;
    throw DomainError("unknown series form: " + form);
}

regimes_heavy::Case6Form case6_form(const std::string& form) {
    if (form.empty() || form == "pcf") return regimes_heavy::Case6Form::PcfSeries;
    if (form == "integral") return regimes_heavy::Case6Form::Integral;
    if (form == "spectral") return regimes_heavy::Case6Form::Spectral;
    throw DomainError("unknown case-6 form: " + form);
}

} // namespace

bool is_known_method(const std::string& m) {
    static const char* names[] = {"exact",    "auto",     "T1-case1", "T1-case2",
                                  "T1-case3", "T1-case4", "match",    "gaussian",
                                  "T2-case1", "T2-case2", "T2-case3", "T2-case4",
                                  "T2-case5", "T2-case6", "T2-sigma"};
    return std::find_if(std::begin(names), std::end(names),
                        [&](const char* n) { return m == n; }) != std::end(names);
}

DensityValue density_by_method(const std::string& method, double t, double x,
                               const ModelParams& params, const InversionConfig& cfg,
                               const std::string& form) {
    const double eps = params.epsilon;
    if (method == "auto")
        return density_by_method(classify(t, x, params), t, x, params, cfg, form);
    if (method == "exact") return exact::invert_density(t, x, params, cfg);
    if (method == "T1-case1") return regimes_fixed::regime1_bessel(t, x, params);
    if (method == "T1-case2") return regimes_fixed::regime2_saddle(t, x, params);
    if (method == "T1-case3")
        return regimes_fixed::regime3_series(t, x, params, fixed_form(form));
    if (method == "T1-case4") return regimes_fixed::regime4_spectral(t, x, params);
    if (method == "match") return regimes_fixed::matching_formula(t, x, params);
    if (method == "gaussian") return regimes_fixed::gaussian_approx(t, x, params);

    const regimes_heavy::HeavyScales h = regimes_heavy::HeavyScales::from_unscaled(t, x, eps);
    if (method == "T2-case1") return regimes_heavy::ht_case1(t, x, eps, cfg);
    if (method == "T2-case2") return regimes_heavy::ht_case2(h.T, x, eps);
    if (method == "T2-case3") return regimes_heavy::ht_case3(h.X, h.T_star, eps);
    if (method == "T2-case4") return regimes_heavy::ht_case4(h.T, h.X, eps);
    if (method == "T2-case5")
        return regimes_heavy::ht_case5(h.T, h.Z, eps, heavy_form(form));
    if (method == "T2-case6")
        return regimes_heavy::ht_case6(h.Theta, h.X, eps, case6_form(form));
    if (method == "T2-sigma") return regimes_heavy::ht_sigma_scale(h.sigma, h.X, eps);
    throw DomainError("unknown method: " + method);
}

} // namespace mm1ps::dispatch
