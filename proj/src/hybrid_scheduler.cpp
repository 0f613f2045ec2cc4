#include "mcsim/hybrid_scheduler.hpp"

#include "mcsim/micro_engine.hpp"
#include "mcsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mcsim {

Probe::Probe(const Partition& partition, const Rect& area) : area_(area)
{
    if (area.degenerate())
        throw std::invalid_argument("probe area is degenerate");
    const double tol = 1e-9 * std::max(1.0, area.area());
    double covered = 0.0;
    for (const auto& sv : partition.subvolumes()) {
        const Rect b = sv.bounds();
        const double shared = intersection_area(b, area);
        if (shared <= tol)
            continue;
        if (std::abs(shared - b.area()) > tol)
            throw GeometryError(partition.region(sv.region).id,
                                "area is misaligned with the mesh: it cuts through subvolume " + std::to_string(sv.id));
        subvolumes_.push_back(sv.id);
        covered += b.area();
    }
    for (const auto& region : partition.regions()) {
        if (region.regime != Regime::Microscopic)
            continue;
        for (const auto& piece : region.pieces())
            micro_area_ += intersection_area(area, piece);
    }
    if (std::abs(covered + micro_area_ - area.area()) > tol)
        throw GeometryError("", "area is not fully inside the environment");
}

std::int64_t Probe::count(const MesoState& meso, std::span<const Point> molecules) const
{
    std::int64_t total = 0;
    for (int id : subvolumes_)
        total += meso.counts[static_cast<std::size_t>(id)];
    if (micro_area_ > 0.0)
        for (const auto& p : molecules)
            if (area_.contains(p))
                ++total;
    return total;
}

Realization::Realization(const ScenarioConfig& config, const Partition& partition, Rng rng)
    : config_(&config),
      partition_(&partition),
      rng_(std::move(rng)),
      transmitter_(partition, config.transmitter),
      receiver_(partition, config.receiver),
      table_(partition, config.diffusion)
{
    if (!(config.micro_step > 0.0))
        throw std::invalid_argument("micro time step must be positive");
    if (!(config.observation_interval > 0.0))
        throw std::invalid_argument("observation interval must be positive");
    meso_.diffusion = config.diffusion;
    meso_.counts.assign(partition.subvolume_count(), 0);
    table_.rebuild(meso_);
    if (partition.has_micro())
        micro_time_ = config.micro_step;
    for (const auto& itf : partition.all_interfaces()) {
        interface_ids_.push_back(itf.subvolume);
        interface_centers_.push_back(partition.subvolume(itf.subvolume).center);
    }
    obs_count_ = config.observation_count();
    series_.times.reserve(obs_count_);
    series_.rx.reserve(obs_count_);
}

void Realization::release(const Rect& area, std::int64_t n)
{
    if (n < 0)
        throw std::invalid_argument("release: negative molecule count");
    if (n == 0)
        return;
    const Probe target(*partition_, area);
    if (!target.has_micro_part() && target.subvolumes().size() == 1) {
        add_molecules(meso_, table_, target.subvolumes().front(), n);
        released_ += n;
        redraw_meso_time();
        return;
    }
    const auto points = place_uniform(area, static_cast<std::size_t>(n), rng_);
    release_points(points);
}

void Realization::release_points(std::span<const Point> points)
{
    for (const auto& p : points) {
        const Location loc = partition_->locate(p);
        if (loc.subvolume)
            ++meso_.counts[static_cast<std::size_t>(*loc.subvolume)];
        else
            molecules_.push_back(p);
    }
    table_.rebuild(meso_);
    released_ += static_cast<std::int64_t>(points.size());
    redraw_meso_time();
}

void Realization::redraw_meso_time()
{
    const double total = table_.total();
    meso_time_ = total > 0.0 ? sample_event_time(time_, total, rng_.uniform_half_open()) : kNever;
}

bool Realization::finished() const
{
    if (time_ >= config_->final_time)
        return true;
    const bool pending_release = next_release_ < config_->extra_releases.size();
    return meso_time_ == kNever && micro_time_ == kNever && !pending_release;
}

void Realization::step()
{
    const double next_event = std::min(meso_time_, micro_time_);
    if (next_release_ < config_->extra_releases.size()) {
        const Release& rel = config_->extra_releases[next_release_];
        if (rel.time <= next_event) {
            time_ = std::max(time_, rel.time);
            ++next_release_;
            release(config_->transmitter, rel.molecules);
            record_observations();
            return;
        }
    }
    if (meso_time_ <= micro_time_)
        meso_branch();
    else
        micro_branch();
    record_observations();
}

void Realization::run()
{
    while (!finished())
        step();
    finish_observations();
}

void Realization::meso_branch()
{
    if (!(table_.total() > 0.0))
        throw std::logic_error("meso branch entered with zero total propensity");
    time_ = meso_time_;
    ++counters_.meso;
    const int source = table_.select_source(rng_.uniform_open());
    const int dest = table_.select_destination(source, rng_.uniform_open());
    if (const auto transfer = execute_event(meso_, table_, *partition_, source, dest))
        molecules_.push_back(place_uniform(transfer->mirror, 1, rng_).front());
    if (++events_since_rebuild_ >= config_->rebuild_interval) {
        table_.rebuild(meso_);
        events_since_rebuild_ = 0;
    }
    redraw_meso_time();
}

void Realization::micro_branch()
{
    time_ = micro_time_;
    const MicroAdvance moved = advance_all(molecules_, config_->diffusion, config_->micro_step, *partition_, rng_);
    counters_.micro += moved.stepped;
    for (const auto& p : moved.transfers)
        accept_transfer(p);
    if (!moved.transfers.empty())
        redraw_meso_time();
    ++micro_ticks_;
    micro_time_ = static_cast<double>(micro_ticks_) * config_->micro_step;
}

int Realization::accept_transfer(Point p)
{
    if (interface_ids_.empty())
        throw std::logic_error("molecule entered the mesoscopic regime but no interface subvolume exists");
    std::size_t best = 0;
    double best_d2 = kNever;
    for (std::size_t i = 0; i < interface_centers_.size(); ++i) {
        const double dx = p.x - interface_centers_[i].x;
        const double dy = p.y - interface_centers_[i].y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    add_molecules(meso_, table_, interface_ids_[best], 1);
    return interface_ids_[best];
}

std::size_t Realization::record_observations()
{
    std::size_t recorded = 0;
    while (next_obs_ <= obs_count_) {
        const double threshold = static_cast<double>(next_obs_) * config_->observation_interval;
        if (time_ < threshold)
            break;
        series_.times.push_back(threshold);
        series_.rx.push_back(static_cast<double>(receiver_.count(meso_, molecules_)));
        if (molecule_total() != released_)
            ++conservation_failures_;
        ++next_obs_;
        ++recorded;
    }
    return recorded;
}

void Realization::finish_observations()
{
    // The loop can stop early when nothing is left to simulate; the state is
    // then frozen, so it stands for every remaining grid point.
    while (next_obs_ <= obs_count_) {
        const double threshold = static_cast<double>(next_obs_) * config_->observation_interval;
        series_.times.push_back(threshold);
        series_.rx.push_back(static_cast<double>(receiver_.count(meso_, molecules_)));
        if (molecule_total() != released_)
            ++conservation_failures_;
        ++next_obs_;
    }
}

RealizationResult Realization::result() const
{
    return {series_, counters_, released_, conservation_failures_};
}

RealizationResult run_realization(const ScenarioConfig& config, const Partition& partition, Rng rng)
{
    Realization state = config.test == TestKind::Impulsive ? impulsive_init(config, partition, std::move(rng))
                                                           : uniform_init(config, partition, std::move(rng));
    state.run();
    return state.result();
}

RealizationResult run_realization(const ScenarioConfig& config, const Partition& partition, std::uint64_t seed,
                                  std::uint64_t index)
{
    return run_realization(config, partition, Rng::for_realization(seed, index));
}

} // namespace mcsim
