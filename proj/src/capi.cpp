#include "mm1ps.h"

#include <cstring>
#include <new>
#include <string>

#include "dispatch.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"
#include "regimes_fixed.hpp"
#include "regimes_heavy.hpp"
#include "simulator.hpp"
#include "singularities.hpp"
#include "table1.hpp"

using namespace mm1ps;

struct mm1ps_model {
    ModelParams params;
};

struct mm1ps_sim {
    sim::SojournSample sample;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <class Fn>
mm1ps_status guarded(Fn&& fn) {
    try {
        fn();
        return MM1PS_OK;
    } catch (const DomainError& e) {
        set_error(e.what());
        return MM1PS_ERROR_DOMAIN;
    } catch (const ConvergenceError& e) {
        set_error(e.what());
        return MM1PS_ERROR_CONVERGENCE;
    } catch (const PoleProximityError& e) {
        set_error(e.what());
        return MM1PS_ERROR_CONVERGENCE;
    } catch (const SolverError& e) {
        set_error(e.what());
        return MM1PS_ERROR_SOLVER;
    } catch (const UnsupportedError& e) {
        set_error(e.what());
        return MM1PS_ERROR_UNSUPPORTED;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MM1PS_ERROR_INVALID;
    }
}

InversionConfig to_config(const mm1ps_inversion* cfg) {
    InversionConfig c;
    if (cfg) {
        c.contour = cfg->contour == MM1PS_CONTOUR_BROMWICH ? Contour::Bromwich
                                                                 : Contour::FixedTalbot;
        c.nodes = cfg->nodes;
        c.abscissa_shift = cfg->abscissa_shift;
        c.tolerance = cfg->tolerance;
    }
    return c;
}

void fill_density(const DensityValue& d, mm1ps_density* out) {
    out->continuous = d.continuous;
    out->atom = d.atom;
    out->err_est = d.err_est;
    out->log_continuous = d.log_continuous;
    std::strncpy(out->regime, d.regime, sizeof(out->regime) - 1);
    out->regime[sizeof(out->regime) - 1] = '\0';
}

} // namespace

extern "C" {

const char* mm1ps_status_name(mm1ps_status s) {
    switch (s) {
        case MM1PS_OK: return "ok";
        case MM1PS_ERROR_INVALID: return "invalid";
        case MM1PS_ERROR_DOMAIN: return "domain";
        case MM1PS_ERROR_CONVERGENCE: return "convergence";
        case MM1PS_ERROR_SOLVER: return "solver";
        case MM1PS_ERROR_UNSUPPORTED: return "unsupported";
    }
    return "unknown";
}

const char* mm1ps_last_error(void) { return g_last_error.c_str(); }

mm1ps_status mm1ps_model_create(double rho, mm1ps_model** out) {
    if (!out) {
        set_error("mm1ps_model_create: null output pointer");
        return MM1PS_ERROR_INVALID;
    }
    *out = nullptr;
    return guarded([&] { *out = new mm1ps_model{ModelParams(rho)}; });
}

void mm1ps_model_free(mm1ps_model* m) { delete m; }

double mm1ps_model_rho(const mm1ps_model* m) { return m ? m->params.rho : -1.0; }

double mm1ps_model_epsilon(const mm1ps_model* m) { return m ? m->params.epsilon : -1.0; }

void mm1ps_inversion_defaults(mm1ps_inversion* cfg) {
    if (!cfg) return;
    const InversionConfig d;
    cfg->contour = MM1PS_CONTOUR_FIXED_TALBOT;
    cfg->nodes = d.nodes;
    cfg->abscissa_shift = d.abscissa_shift;
    cfg->tolerance = d.tolerance;
}

mm1ps_status mm1ps_density_exact(const mm1ps_model* m, double t, double x,
                                 const mm1ps_inversion* cfg, mm1ps_density* out) {
    if (!m || !out) {
        set_error("mm1ps_density_exact: null argument");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] {
        fill_density(exact::invert_density(t, x, m->params, to_config(cfg)), out);
    });
}

mm1ps_status mm1ps_density_method(const mm1ps_model* m, const char* method, double t,
                                  double x, const mm1ps_inversion* cfg, const char* form,
                                  mm1ps_density* out) {
    if (!m || !out || !method) {
        set_error("mm1ps_density_method: null argument");
        return MM1PS_ERROR_INVALID;
    }
    if (!dispatch::is_known_method(method)) {
        set_error("mm1ps_density_method: unknown method name");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] {
        fill_density(dispatch::density_by_method(method, t, x, m->params, to_config(cfg),
                                                 form ? form : ""),
                     out);
    });
}

const char* mm1ps_classify(const mm1ps_model* m, double t, double x) {
    if (!m) return "";
    try {
        return dispatch::classify(t, x, m->params);
    } catch (...) {
        return "";
    }
}

mm1ps_status mm1ps_atom_mass(const mm1ps_model* m, double x, double* out) {
    if (!m || !out) {
        set_error("mm1ps_atom_mass: null argument");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] { *out = exact::atom_mass(x, m->params); });
}

mm1ps_status mm1ps_density_unconditional(const mm1ps_model* m, double t,
                                         const mm1ps_inversion* cfg, double* out) {
    if (!m || !out) {
        set_error("mm1ps_density_unconditional: null argument");
        return MM1PS_ERROR_INVALID;
    }
    return guarded(
        [&] { *out = exact::unconditional_density(t, m->params, to_config(cfg)); });
}

mm1ps_status mm1ps_x_star(const mm1ps_model* m, double* out) {
    if (!m || !out) {
        set_error("mm1ps_x_star: null argument");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] { *out = singularities::x_star(m->params); });
}

mm1ps_status mm1ps_dominant_singularity(const mm1ps_model* m, double x, double* u,
                                        double* v, double* r_star, double* f_amp) {
    if (!m) {
        set_error("mm1ps_dominant_singularity: null model");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] {
        const singularities::SingularityResult r =
            singularities::dominant_singularity(x, m->params);
        if (u) *u = r.u;
        if (v) *v = r.v;
        if (r_star) *r_star = r.r_star;
        if (f_amp) *f_amp = r.f_amp;
    });
}

mm1ps_status mm1ps_heavy_roots(double X, int count, double* roots) {
    if (!roots) {
        set_error("mm1ps_heavy_roots: null output");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] {
        const singularities::HeavyRoots hr = singularities::heavy_roots(X, count);
        for (int i = 0; i < count; ++i) roots[i] = hr.roots[static_cast<size_t>(i)];
    });
}

mm1ps_status mm1ps_psi_from_sigma(double sigma, double* psi, double* x_tilde,
                                  double* v_tilde) {
    return guarded([&] {
        const singularities::PsiPoint p = singularities::psi_from_sigma(sigma);
        if (psi) *psi = p.psi;
        if (x_tilde) *x_tilde = p.x_tilde;
        if (v_tilde) *v_tilde = p.v_tilde;
    });
}

mm1ps_status mm1ps_flatto_constants(const mm1ps_model* m, double* A, double* B,
                                    double* C_star, double* ros_factor) {
    if (!m) {
        set_error("mm1ps_flatto_constants: null model");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] {
        const regimes_fixed::TailConstants c = regimes_fixed::flatto_constants(m->params);
        if (A) *A = c.A;
        if (B) *B = c.B;
        if (C_star) *C_star = c.C_star;
        if (ros_factor) *ros_factor = c.ros_density_factor;
    });
}

mm1ps_status mm1ps_flatto_tail(const mm1ps_model* m, double t, double* value) {
    if (!m || !value) {
        set_error("mm1ps_flatto_tail: null argument");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] { *value = regimes_fixed::flatto_tail(t, m->params); });
}

mm1ps_status mm1ps_morrison_constants(double eps, double* alpha_star, double* beta_star,
                                      double* gamma_star) {
    return guarded([&] {
        const regimes_heavy::MorrisonTail t = regimes_heavy::morrison_tail_constants(eps);
        if (alpha_star) *alpha_star = t.alpha_star;
        if (beta_star) *beta_star = t.beta_star;
        if (gamma_star) *gamma_star = t.gamma_star;
    });
}

mm1ps_status mm1ps_morrison_density(double sigma, double eps, double* value) {
    if (!value) {
        set_error("mm1ps_morrison_density: null output");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] { *value = regimes_heavy::morrison_density(sigma, eps); });
}

size_t mm1ps_table1_size(void) { return table1::size(); }

mm1ps_status mm1ps_table1_cell(size_t index, double* rho, double* x, double* u,
                               double* v) {
    if (index >= table1::size()) {
        set_error("mm1ps_table1_cell: index out of range");
        return MM1PS_ERROR_INVALID;
    }
    const table1::Cell& c = table1::cells()[index];
    if (rho) *rho = c.rho;
    if (x) *x = c.x;
    if (u) *u = c.u;
    if (v) *v = c.v;
    return MM1PS_OK;
}

mm1ps_status mm1ps_simulate(const mm1ps_sim_config* cfg, mm1ps_sim** out) {
    if (!cfg || !out) {
        set_error("mm1ps_simulate: null argument");
        return MM1PS_ERROR_INVALID;
    }
    *out = nullptr;
    return guarded([&] {
        sim::SimConfig c;
        c.rho = cfg->rho;
        c.x = cfg->x;
        c.replications = cfg->replications;
        c.seed = cfg->seed;
        if (cfg->max_events) c.max_events = cfg->max_events;
        auto* handle = new mm1ps_sim{sim::sample_sojourn(c)};
        *out = handle;
    });
}

void mm1ps_sim_free(mm1ps_sim* s) { delete s; }

unsigned long long mm1ps_sim_count(const mm1ps_sim* s) {
    return s ? s->sample.values.size() : 0;
}

double mm1ps_sim_mean(const mm1ps_sim* s) { return s ? s->sample.mean : 0.0; }

double mm1ps_sim_variance(const mm1ps_sim* s) { return s ? s->sample.variance : 0.0; }

double mm1ps_sim_ci_halfwidth(const mm1ps_sim* s) {
    return s ? s->sample.ci_halfwidth : 0.0;
}

double mm1ps_sim_atom_fraction(const mm1ps_sim* s) {
    return s ? sim::atom_fraction(s->sample) : 0.0;
}

const double* mm1ps_sim_values(const mm1ps_sim* s, unsigned long long* count) {
    if (!s) {
        if (count) *count = 0;
        return nullptr;
    }
    if (count) *count = s->sample.values.size();
    return s->sample.values.data();
}

mm1ps_status mm1ps_sim_density(const mm1ps_sim* s, const double* grid, size_t n,
                               double bandwidth, double* estimates, double* stderrs) {
    if (!s || !grid || !estimates || !stderrs) {
        set_error("mm1ps_sim_density: null argument");
        return MM1PS_ERROR_INVALID;
    }
    return guarded([&] {
        const auto pts = sim::empirical_density(s->sample, std::span<const double>(grid, n),
                                                bandwidth);
        for (size_t i = 0; i < n; ++i) {
            estimates[i] = pts[i].estimate;
            stderrs[i] = pts[i].stderr_est;
        }
    });
}

} // extern "C"
