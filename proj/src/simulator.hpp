#ifndef MM1PS_SIMULATOR_HPP
#define MM1PS_SIMULATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "model.hpp"

namespace mm1ps::sim {

struct SimConfig {
    double rho = 0.5;
    double x = 1.0;                      // tagged customer's service requirement
    std::uint64_t replications = 100000;
    std::uint64_t seed = 1;
    std::uint64_t max_events = 100000000; // per replication; trips only on bugs

    void validate() const;
};

struct SojournSample {
    std::vector<double> values; // one sojourn time per replication, in order
    double mean = 0.0;
    double variance = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal half-width
    // The sojourn law has point masses at every t = (k+1)x (constant company
    // of k jobs); atom_counts[k] counts replications landing exactly there.
    std::vector<std::uint64_t> atom_counts;
    std::uint64_t atom_count = 0; // k = 0 entry: finished exactly at t = x
    double x = 0.0;
};

// Stationary tagged-customer simulation of the processor-sharing queue:
// the initial system state is drawn exactly (geometric occupancy, memoryless
// residual work), then the dynamics run event to event until the tagged job
// completes.  Deterministic for a fixed (seed, config); replications carry
// independent counter-based substreams, so any parallel schedule merges to
// the same output.
SojournSample sample_sojourn(const SimConfig& cfg);

struct DensityPoint {
    double t = 0.0;
    double estimate = 0.0;
    double stderr_est = 0.0;
};

// Histogram estimate of the continuous density at the grid points; samples
// at the atom t == x are excluded from the continuous estimate.
// bandwidth <= 0 picks a plug-in width from the sample spread.
std::vector<DensityPoint> empirical_density(const SojournSample& samples,
                                            std::span<const double> grid,
                                            double bandwidth = 0.0);

double atom_fraction(const SojournSample& samples);

} // namespace mm1ps::sim

#endif
