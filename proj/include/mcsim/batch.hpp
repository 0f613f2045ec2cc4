#pragma once

#include "mcsim/analytics.hpp"
#include "mcsim/config.hpp"
#include "mcsim/hybrid_scheduler.hpp"

#include <cstdint>
#include <vector>

namespace mcsim {

struct BatchOptions {
    std::uint64_t seed = 1;
    std::size_t realizations = 1;
    std::size_t parallel = 1;
};

struct BatchResult {
    AggregateSeries mean;
    EventCounters counters;          // summed over realizations
    std::int64_t released = 0;       // molecules per realization
    std::size_t realizations = 0;
    std::size_t conservation_failures = 0;
    std::size_t realizations_with_failures = 0;
    double wall_seconds = 0.0;

    /// {micro, meso} events per molecule per unit time.
    std::pair<double, double> event_rates(double final_time) const;
};

/// Runs realizations 0..n-1 of a scenario, realization i on the stream
/// Rng::for_realization(seed, i), over a pool of `parallel` workers.
/// Results are reduced in realization order, so the output does not depend
/// on the worker count.
BatchResult run_batch(const ScenarioConfig& config, const Partition& partition, const BatchOptions& options);

} // namespace mcsim
