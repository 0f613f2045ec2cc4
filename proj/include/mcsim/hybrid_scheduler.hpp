#pragma once

#include "mcsim/analytics.hpp"
#include "mcsim/config.hpp"
#include "mcsim/geometry.hpp"
#include "mcsim/meso_engine.hpp"
#include "mcsim/rng.hpp"

#include <cstdint>
#include <vector>

namespace mcsim {

struct EventCounters {
    std::uint64_t micro = 0;
    std::uint64_t meso = 0;

    EventCounters& operator+=(const EventCounters& other)
    {
        micro += other.micro;
        meso += other.meso;
        return *this;
    }
};

/// Counting area (TX or RX). Its microscopic part counts individual molecules
/// (half-open membership); its mesoscopic part is the set of subvolumes that
/// lie entirely inside it.
class Probe {
public:
    /// Throws GeometryError when the area cuts through a subvolume.
    Probe(const Partition& partition, const Rect& area);

    const Rect& area() const { return area_; }
    std::span<const int> subvolumes() const { return subvolumes_; }
    bool has_micro_part() const { return micro_area_ > 0.0; }

    std::int64_t count(const MesoState& meso, std::span<const Point> molecules) const;

private:
    Rect area_;
    std::vector<int> subvolumes_;
    double micro_area_ = 0.0;
};

struct RealizationResult {
    ObservationSeries series;
    EventCounters counters;
    std::int64_t released = 0;
    std::size_t conservation_failures = 0;
};

/// State of one realization of the hybrid algorithm: both regime clocks,
/// subvolume counts and propensities, the molecule set and the RNG stream.
class Realization {
public:
    Realization(const ScenarioConfig& config, const Partition& partition, Rng rng);

    /// Places `n` molecules uniformly over `area`: points in microscopic
    /// regions become molecules, points in mesoscopic regions increment the
    /// containing subvolume. A release onto a single whole subvolume adds the
    /// molecules to it directly. Redraws the next meso event time.
    void release(const Rect& area, std::int64_t n);
    /// Adds molecules at explicit positions (tests and custom initialization).
    void release_points(std::span<const Point> points);

    /// One pass through the control loop: pick a branch, run it, observe.
    void step();
    void run();
    bool finished() const;

    void meso_branch();
    void micro_branch();
    /// Hands a molecule that left the microscopic regime at `p` to the
    /// nearest interface subvolume (lowest id on ties). Returns its id.
    int accept_transfer(Point p);
    /// Records RX counts for every threshold i_ob * t_ob <= t. Returns how
    /// many were recorded.
    std::size_t record_observations();

    double time() const { return time_; }
    double micro_time() const { return micro_time_; }
    double meso_time() const { return meso_time_; }
    std::size_t next_observation_index() const { return next_obs_; }

    const MesoState& meso() const { return meso_; }
    const PropensityTable& propensities() const { return table_; }
    const std::vector<Point>& molecules() const { return molecules_; }
    const EventCounters& counters() const { return counters_; }
    const ObservationSeries& series() const { return series_; }
    std::int64_t released() const { return released_; }
    std::int64_t molecule_total() const { return meso_.total() + static_cast<std::int64_t>(molecules_.size()); }
    std::size_t conservation_failures() const { return conservation_failures_; }
    Rng& rng() { return rng_; }

    RealizationResult result() const;

private:
    void redraw_meso_time();
    void finish_observations();

    const ScenarioConfig* config_;
    const Partition* partition_;
    Rng rng_;
    Probe transmitter_;
    Probe receiver_;

    MesoState meso_;
    PropensityTable table_;
    std::vector<Point> molecules_;
    std::vector<Point> interface_centers_;
    std::vector<int> interface_ids_;

    double time_ = 0.0;
    double micro_time_ = kNever;
    std::uint64_t micro_ticks_ = 1;
    double meso_time_ = kNever;
    std::uint64_t events_since_rebuild_ = 0;

    std::size_t next_obs_ = 1;
    std::size_t obs_count_ = 0;
    std::size_t next_release_ = 0;
    ObservationSeries series_;
    EventCounters counters_;
    std::int64_t released_ = 0;
    std::size_t conservation_failures_ = 0;
};

/// Runs one realization: initialization by test kind, then the control loop
/// until t >= t_f.
RealizationResult run_realization(const ScenarioConfig& config, const Partition& partition, Rng rng);
RealizationResult run_realization(const ScenarioConfig& config, const Partition& partition, std::uint64_t seed,
                                  std::uint64_t index = 0);

} // namespace mcsim
