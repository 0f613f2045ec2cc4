#pragma once

#include "mcsim/geometry.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace mcsim {

/// Per-molecule transition rate between two adjacent square subvolumes of
/// widths `h_i` (source) and `h_j` (destination) whose faces overlap by `h_o`:
///
///     k = 2 D h_o / (h_i^2 (h_i + h_j))
///
/// With h_o = h_i = h_j = h this is D / h^2.
double transition_rate(double h_i, double h_j, double h_o, double diffusion);

/// Time of the next event after `t` for total propensity `total` and a
/// uniform draw `u1` in (0, 1]. Returns +infinity when `total` is zero.
double sample_event_time(double t, double total, double u1);

/// Reference weighted die roll: first index whose cumulative propensity
/// reaches `u * sum`. Zero-propensity entries are never returned.
std::size_t select_by_cumulative(std::span<const double> propensities, double u);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct MesoState {
    std::vector<std::int64_t> counts;
    double diffusion = 1.0;

    std::int64_t total() const;
};

/// Molecule leaving the mesoscopic regime through an interface subvolume.
struct TransferRequest {
    int source = 0;
    Rect mirror;
};

/// Link rates, subvolume propensities and the total propensity.
///
/// Subvolume propensities live in a Fenwick tree so that the source die roll
/// and single-entry updates are logarithmic in the number of subvolumes. The
/// selected index is the same one a linear cumulative scan would pick.
class PropensityTable {
public:
    PropensityTable(const Partition& partition, double diffusion);

    std::size_t size() const { return subvolume_rate_.size(); }

    double link_rate(std::size_t link) const { return link_rate_[link]; }
    std::span<const NeighborLink> links_from(int subvolume) const { return partition_->links_from(subvolume); }
    /// Sum of outgoing link rates of a subvolume.
    double subvolume_rate(int subvolume) const { return subvolume_rate_[static_cast<std::size_t>(subvolume)]; }

    double link_propensity(int subvolume, std::size_t local_link) const;
    double subvolume_propensity(int subvolume) const { return propensity_[static_cast<std::size_t>(subvolume)]; }
    std::span<const double> subvolume_propensities() const { return propensity_; }
    double total() const;

    /// Recomputes every propensity from the counts.
    void rebuild(const MesoState& state);
    /// Refreshes one subvolume after its count changed.
    void update(const MesoState& state, int subvolume);

    int select_source(double u2) const;
    /// Returns a subvolume id or kVirtualMicro.
    int select_destination(int source, double u3) const;

private:
    const Partition* partition_;
    std::vector<double> link_rate_;
    std::vector<double> link_cumulative_; // running sum of rates within each source
    std::vector<std::size_t> link_begin_;
    std::vector<double> subvolume_rate_;
    std::vector<double> propensity_;
    std::vector<double> tree_; // 1-based Fenwick tree over propensity_
    std::size_t top_bit_ = 0;
    double total_ = 0.0;
    std::size_t occupied_ = 0;
};

PropensityTable rebuild_propensities(const MesoState& state, const Partition& partition);

int select_source(const PropensityTable& table, double u2);
int select_destination(const PropensityTable& table, int source, double u3);

/// Moves one molecule from `source` to `dest`. Returns a transfer request when
/// `dest` is the virtual micro subvolume.
std::optional<TransferRequest> execute_event(MesoState& state, PropensityTable& table, const Partition& partition,
                                             int source, int dest);

void add_molecules(MesoState& state, PropensityTable& table, int subvolume, std::int64_t n);

} // namespace mcsim
