#include "mcsim/meso_engine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mcsim {

double transition_rate(double h_i, double h_j, double h_o, double diffusion)
{
    if (!(h_i > 0.0) || !(h_j > 0.0))
        throw std::invalid_argument("transition_rate: subvolume widths must be positive");
    if (h_o < 0.0 || diffusion < 0.0)
        throw std::invalid_argument("transition_rate: negative overlap or diffusion coefficient");
    const double limit = std::min(h_i, h_j);
    if (h_o > limit * (1.0 + 1e-12))
        throw std::invalid_argument("transition_rate: overlap exceeds the smaller subvolume width");
    return 2.0 * diffusion * h_o / (h_i * h_i * (h_i + h_j));
}

double sample_event_time(double t, double total, double u1)
{
    if (!(total > 0.0))
        return kNever;
    if (!(u1 > 0.0) || u1 > 1.0)
        throw std::invalid_argument("sample_event_time: u1 must lie in (0, 1]");
    return t - std::log(u1) / total;
}

std::size_t select_by_cumulative(std::span<const double> propensities, double u)
{
    const double sum = std::accumulate(propensities.begin(), propensities.end(), 0.0);
    if (!(sum > 0.0))
        throw std::domain_error("weighted die roll over zero total propensity");
    const double target = u * sum;
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < propensities.size(); ++i) {
        if (propensities[i] <= 0.0)
            continue;
        cumulative += propensities[i];
        last_nonzero = i;
        if (cumulative >= target)
            return i;
    }
    return last_nonzero;
}

std::int64_t MesoState::total() const { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

PropensityTable::PropensityTable(const Partition& partition, double diffusion) : partition_(&partition)
{
    const std::size_t n = partition.subvolume_count();
    subvolume_rate_.assign(n, 0.0);
    propensity_.assign(n, 0.0);
    tree_.assign(n + 1, 0.0);
    link_begin_.reserve(n + 1);
    link_begin_.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
        double running = 0.0;
        for (const auto& link : partition.links_from(static_cast<int>(i))) {
            const double hi = partition.subvolume(link.source).width;
            const double rate = transition_rate(hi, link.dest_width, link.overlap, diffusion);
            running += rate;
            link_rate_.push_back(rate);
            link_cumulative_.push_back(running);
        }
        subvolume_rate_[i] = running;
        link_begin_.push_back(link_rate_.size());
    }
    top_bit_ = 1;
    while (top_bit_ * 2 <= n)
        top_bit_ *= 2;
}

double PropensityTable::link_propensity(int subvolume, std::size_t local_link) const
{
    const auto s = static_cast<std::size_t>(subvolume);
    const std::size_t link = link_begin_[s] + local_link;
    if (link >= link_begin_[s + 1])
        throw std::out_of_range("link index out of range");
    const double rate = subvolume_rate_[s];
    return rate > 0.0 ? propensity_[s] * (link_rate_[link] / rate) : 0.0;
}

double PropensityTable::total() const
{
    // The running sum can drift by rounding; an empty table is exactly zero.
    if (occupied_ == 0)
        return 0.0;
    return total_ > 0.0 ? total_ : 0.0;
}

void PropensityTable::rebuild(const MesoState& state)
{
    const std::size_t n = size();
    if (state.counts.size() != n)
        throw std::invalid_argument("rebuild: count vector does not match the partition");
    total_ = 0.0;
    occupied_ = 0;
    for (std::size_t i = 0; i < n; ++i) {
        propensity_[i] = subvolume_rate_[i] * static_cast<double>(state.counts[i]);
        total_ += propensity_[i];
        occupied_ += propensity_[i] > 0.0 ? 1 : 0;
    }
    // Linear-time Fenwick construction.
    for (std::size_t i = 1; i <= n; ++i)
        tree_[i] = propensity_[i - 1];
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t parent = i + (i & (~i + 1));
        if (parent <= n)
            tree_[parent] += tree_[i];
    }
}

void PropensityTable::update(const MesoState& state, int subvolume)
{
    const auto s = static_cast<std::size_t>(subvolume);
    const double fresh = subvolume_rate_[s] * static_cast<double>(state.counts[s]);
    const double delta = fresh - propensity_[s];
    if (delta == 0.0)
        return;
    occupied_ += (fresh > 0.0 ? 1 : 0) - (propensity_[s] > 0.0 ? 1 : 0);
    propensity_[s] = fresh;
    total_ += delta;
    for (std::size_t i = s + 1; i <= size(); i += i & (~i + 1))
        tree_[i] += delta;
}

int PropensityTable::select_source(double u2) const
{
    const double total_propensity = total();
    if (!(total_propensity > 0.0))
        throw std::domain_error("select_source: total propensity is zero");
    const std::size_t n = size();
    double remaining = u2 * total_propensity;
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step > 0; step >>= 1) {
        const std::size_t next = pos + step;
        if (next <= n && tree_[next] < remaining) {
            pos = next;
            remaining -= tree_[next];
        }
    }
    // pos is now the 0-based index of the first entry whose prefix reaches the target.
    std::size_t pick = std::min(pos, n - 1);
    if (propensity_[pick] > 0.0)
        return static_cast<int>(pick);
    // Rounding landed on an empty entry; take the nearest non-empty one.
    for (std::size_t i = pick + 1; i < n; ++i)
        if (propensity_[i] > 0.0)
            return static_cast<int>(i);
    for (std::size_t i = pick; i-- > 0;)
        if (propensity_[i] > 0.0)
            return static_cast<int>(i);
    throw std::logic_error("select_source: no subvolume with positive propensity");
}

int PropensityTable::select_destination(int source, double u3) const
{
    const auto s = static_cast<std::size_t>(source);
    if (!(propensity_.at(s) > 0.0))
        throw std::domain_error("select_destination: source subvolume " + std::to_string(source) +
                                " has zero propensity");
    const std::size_t begin = link_begin_[s];
    const std::size_t end = link_begin_[s + 1];
    const double target = u3 * subvolume_rate_[s];
    const auto links = partition_->links_from(source);
    for (std::size_t l = begin; l < end; ++l)
        if (link_cumulative_[l] >= target)
            return links[l - begin].dest;
    return links.back().dest;
}

PropensityTable rebuild_propensities(const MesoState& state, const Partition& partition)
{
    PropensityTable table(partition, state.diffusion);
    table.rebuild(state);
    return table;
}

int select_source(const PropensityTable& table, double u2) { return table.select_source(u2); }

int select_destination(const PropensityTable& table, int source, double u3)
{
    return table.select_destination(source, u3);
}

std::optional<TransferRequest> execute_event(MesoState& state, PropensityTable& table, const Partition& partition,
                                             int source, int dest)
{
    auto& from = state.counts.at(static_cast<std::size_t>(source));
    if (from < 1)
        throw std::logic_error("execute_event: subvolume " + std::to_string(source) + " is empty");
    --from;
    table.update(state, source);
    if (dest == kVirtualMicro)
        return TransferRequest{source, partition.mirror_of(source)};
    ++state.counts.at(static_cast<std::size_t>(dest));
    table.update(state, dest);
    return std::nullopt;
}

void add_molecules(MesoState& state, PropensityTable& table, int subvolume, std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("add_molecules: count must be at least 1");
    if (subvolume < 0 || static_cast<std::size_t>(subvolume) >= state.counts.size())
        throw std::out_of_range("add_molecules: unknown subvolume " + std::to_string(subvolume));
    state.counts[static_cast<std::size_t>(subvolume)] += n;
    table.update(state, subvolume);
}

} // namespace mcsim
