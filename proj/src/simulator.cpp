#include "simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <thread>

#include "errors.hpp"
#include "philox.hpp"

namespace mm1ps::sim {

void SimConfig::validate() const {
    if (!(rho > 0.0) || !(rho < 1.0) || !std::isfinite(rho))
        throw DomainError("simulator requires 0 < rho < 1");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("simulator requires x >= 0");
    if (replications < 1) throw DomainError("simulator requires replications >= 1");
}

namespace {

double draw_exponential(rng::Philox& gen, double rate) {
    return -std::log1p(-gen.uniform()) / rate;
}

// One tagged-customer replication.  Jobs are tracked by remaining work; at
// total occupancy k every job drains at rate 1/k, so the next completion is
// k * min(remaining) away and arrival clocks superpose unchanged.
double run_one(double rho, double x, std::uint64_t seed, std::uint64_t rep,
               std::uint64_t max_events) {
    rng::Philox gen(seed, rep);

    // Stationary state seen on arrival: geometric occupancy, each resident
    // job memoryless in remaining work.
    std::vector<double> others;
    {
        const double u = gen.uniform();
        // P(N = n) = (1-rho) rho^n
        const std::uint64_t n =
            static_cast<std::uint64_t>(std::floor(std::log1p(-u) / std::log(rho)));
        others.reserve(n + 8);
        for (std::uint64_t i = 0; i < n; ++i)
            others.push_back(draw_exponential(gen, 1.0));
    }

    double tagged = x;
    double elapsed = 0.0;
    double next_arrival = draw_exponential(gen, rho);
    bool shared = !others.empty();
#ifndef NDEBUG
    double work_done = 0.0;
#endif

    for (std::uint64_t events = 0; events < max_events; ++events) {
        const std::uint64_t k = others.size() + 1;
        double min_work = tagged;
        std::size_t min_idx = others.size(); // sentinel: tagged completes first
        for (std::size_t i = 0; i < others.size(); ++i)
            if (others[i] < min_work) {
                min_work = others[i];
                min_idx = i;
            }
        const double completion_gap = static_cast<double>(k) * min_work;

        if (next_arrival < completion_gap) {
            // arrival first: drain everyone, admit the new job
            const double drain = next_arrival / static_cast<double>(k);
            for (double& wv : others) wv -= drain;
            tagged -= drain;
            elapsed += next_arrival;
#ifndef NDEBUG
            work_done += drain * static_cast<double>(k); // k jobs at rate 1/k each
#endif
            others.push_back(draw_exponential(gen, 1.0));
            next_arrival = draw_exponential(gen, rho);
            shared = true;
            continue;
        }

        elapsed += completion_gap;
        next_arrival -= completion_gap;
#ifndef NDEBUG
        work_done += min_work * static_cast<double>(k);
#endif
        if (min_idx == others.size()) {
            // tagged job drains to zero
            if (!shared && others.empty()) return x; // served alone: exactly x
#ifndef NDEBUG
            assert(std::abs(work_done - elapsed) <= 1e-9 * std::max(1.0, elapsed));
#endif
            return elapsed;
        }
        const double drain = min_work;
        for (double& wv : others) wv -= drain;
        tagged -= drain;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(min_idx));
    }
    throw SolverError("simulator: max_events exceeded (runaway replication)");
}

} // namespace

SojournSample sample_sojourn(const SimConfig& cfg) {
    cfg.validate();
    SojournSample out;
    out.x = cfg.x;
    out.values.assign(cfg.replications, 0.0);

    const std::uint64_t n = cfg.replications;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunk = std::max<std::uint64_t>(1024, n / (4 * hw) + 1);
    std::vector<std::future<void>> tasks;
    for (std::uint64_t begin = 0; begin < n; begin += chunk) {
        const std::uint64_t end = std::min(n, begin + chunk);
        tasks.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::uint64_t i = begin; i < end; ++i)
                out.values[i] = run_one(cfg.rho, cfg.x, cfg.seed, i, cfg.max_events);
        }));
    }
    for (auto& t : tasks) t.get();

    double mean = 0.0;
    for (double v : out.values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : out.values) var += (v - mean) * (v - mean);
    var = n > 1 ? var / static_cast<double>(n - 1) : 0.0;
    out.mean = mean;
    out.variance = var;
    out.ci_halfwidth = 1.959963984540054 * std::sqrt(var / static_cast<double>(n));
    // Constant-company paths finish in a single event at exactly (k+1)x; the
    // accumulator reproduces (k+1)*x bit for bit, so equality is the test.
    if (cfg.x > 0.0) {
        for (double v : out.values) {
            const long long kk = std::llround(v / cfg.x) - 1;
            if (kk >= 0 && v == static_cast<double>(kk + 1) * cfg.x) {
                if (out.atom_counts.size() <= static_cast<std::size_t>(kk))
                    out.atom_counts.resize(static_cast<std::size_t>(kk) + 1, 0);
                ++out.atom_counts[static_cast<std::size_t>(kk)];
            }
        }
    }
    out.atom_count = out.atom_counts.empty() ? 0 : out.atom_counts[0];
    return out;
}

double atom_fraction(const SojournSample& samples) {
    if (samples.values.empty()) throw DomainError("empirical estimate needs samples");
    return static_cast<double>(samples.atom_count) /
           static_cast<double>(samples.values.size());
}

std::vector<DensityPoint> empirical_density(const SojournSample& samples,
                                            std::span<const double> grid,
                                            double bandwidth) {
    if (samples.values.empty()) throw DomainError("empirical_density needs samples");
    std::vector<double> cont;
    cont.reserve(samples.values.size());
    for (double v : samples.values) {
        if (samples.x > 0.0) {
            if (v <= samples.x) continue;
            const long long kk = std::llround(v / samples.x) - 1;
            if (kk >= 0 && v == static_cast<double>(kk + 1) * samples.x)
                continue; // point mass, not part of the continuous estimate
        } else if (!(v > 0.0)) {
            continue;
        }
        cont.push_back(v);
    }
    if (cont.empty()) throw DomainError("empirical_density: no continuous samples");
    std::sort(cont.begin(), cont.end());

    const double n = static_cast<double>(cont.size());
    if (bandwidth <= 0.0) {
        // Freedman-Diaconis width on the continuous subsample
        const double q1 = cont[static_cast<size_t>(0.25 * (n - 1))];
        const double q3 = cont[static_cast<size_t>(0.75 * (n - 1))];
        bandwidth = 2.0 * (q3 - q1) / std::cbrt(n);
        if (!(bandwidth > 0.0)) bandwidth = 0.1;
    }

    std::vector<DensityPoint> out;
    out.reserve(grid.size());
    const double total = static_cast<double>(samples.values.size());
    for (double t : grid) {
        if (!(t > samples.x))
            throw DomainError("empirical_density grid points must exceed x");
        const double lo = t - 0.5 * bandwidth, hi = t + 0.5 * bandwidth;
        const auto it_lo = std::lower_bound(cont.begin(), cont.end(), lo);
        const auto it_hi = std::lower_bound(cont.begin(), cont.end(), hi);
        const double count = static_cast<double>(it_hi - it_lo);
        const double p_hat = count / total;
        DensityPoint dp;
        dp.t = t;
        dp.estimate = p_hat / bandwidth;
        dp.stderr_est = std::sqrt(p_hat * (1.0 - p_hat) / total) / bandwidth;
        out.push_back(dp);
    }
    return out;
}

} // namespace mm1ps::sim
