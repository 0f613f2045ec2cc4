#include "mcsim/batch.hpp"

#include "mcsim/scenarios.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mcsim {

std::pair<double, double> BatchResult::event_rates(double final_time) const
{
    return events_per_molecule_time(counters, released, final_time, realizations);
}

BatchResult run_batch(const ScenarioConfig& config, const Partition& partition, const BatchOptions& options)
{
    if (options.realizations == 0)
        throw std::invalid_argument("run_batch: at least one realization is required");
    const auto start = std::chrono::steady_clock::now();

    std::vector<RealizationResult> runs(options.realizations);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= options.realizations)
                return;
            try {
                runs[i] = run_realization(config, partition, options.seed, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(options.realizations);
                return;
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(options.parallel, options.realizations));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    BatchResult out;
    out.realizations = options.realizations;
    out.released = runs.front().released;
    std::vector<ObservationSeries> series;
    series.reserve(runs.size());
    for (auto& r : runs) {
        out.counters += r.counters;
        out.conservation_failures += r.conservation_failures;
        if (r.conservation_failures > 0)
            ++out.realizations_with_failures;
        series.push_back(std::move(r.series));
    }
    out.mean = aggregate(series);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace mcsim
