#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    Point center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool degenerate() const { return !(x1 > x0) || !(y1 > y0); }

    /// Half-open membership [x0, x1) x [y0, y1).
    bool contains(Point p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1; }
};

/// Area of the intersection of two rectangles (0 when disjoint).
double intersection_area(const Rect& a, const Rect& b);

enum class Regime { Microscopic, Mesoscopic };

/// Rectangular environment with a reflective outer boundary.
struct Environment {
    double width = 0.0;
    double height = 0.0;

    Rect bounds() const { return {0.0, 0.0, width, height}; }
};

/// A region is either a rectangle or a rectangular ring (outer minus inner).
struct RegionSpec {
    std::string id;
    Rect outer;
    std::optional<Rect> inner;
    Regime regime = Regime::Mesoscopic;
    double subvolume_width = 0.0; // only meaningful for mesoscopic regions

    double area() const { return outer.area() - (inner ? inner->area() : 0.0); }

    /// Decomposes the extent into at most four disjoint rectangles.
    std::vector<Rect> pieces() const;
};

struct Subvolume {
    int id = 0;
    Point center;
    double width = 0.0;
    int region = 0;
    bool is_interface = false;

    Rect bounds() const
    {
        const double half = 0.5 * width;
        return {center.x - half, center.y - half, center.x + half, center.y + half};
    }
};

/// Marks a link whose destination is the virtual mirror subvolume inside a
/// microscopic region.
inline constexpr int kVirtualMicro = -1;

struct NeighborLink {
    int source = 0;
    int dest = kVirtualMicro;
    double overlap = 0.0;
    double dest_width = 0.0;

    bool to_micro() const { return dest == kVirtualMicro; }
};

struct InterfaceSubvolume {
    int subvolume = 0;
    int micro_region = 0;
    Rect mirror; // reflection across the interface face, inside the micro region
};

struct Location {
    int region = 0;
    std::optional<int> subvolume;
};

class GeometryError : public std::runtime_error {
public:
    GeometryError(std::string region_id, const std::string& what)
        : std::runtime_error(region_id.empty() ? what : "region '" + region_id + "': " + what),
          region_id_(std::move(region_id))
    {
    }

    const std::string& region_id() const { return region_id_; }

private:
    std::string region_id_;
};

/// Immutable decomposition of the environment into regions, subvolumes and
/// neighbor links. Safe to share between concurrently running realizations.
class Partition {
public:
    static Partition build(const Environment& env, std::vector<RegionSpec> regions);

    const Environment& environment() const { return env_; }
    std::span<const RegionSpec> regions() const { return regions_; }
    const RegionSpec& region(int index) const { return regions_.at(static_cast<std::size_t>(index)); }
    int region_index(const std::string& id) const;

    std::span<const Subvolume> subvolumes() const { return subvolumes_; }
    const Subvolume& subvolume(int id) const { return subvolumes_.at(static_cast<std::size_t>(id)); }
    std::size_t subvolume_count() const { return subvolumes_.size(); }
    std::size_t region_subvolume_count(int region) const;

    /// Outgoing links of a subvolume, ordered by destination id with the
    /// virtual-micro link (if any) last.
    std::span<const NeighborLink> links_from(int subvolume) const;
    std::size_t link_count() const { return links_.size(); }

    /// Interface subvolumes of one microscopic region with their mirrors.
    std::vector<InterfaceSubvolume> interface_subvolumes(int micro_region) const;
    /// Interface subvolumes of every microscopic region, in subvolume id order.
    std::span<const InterfaceSubvolume> all_interfaces() const { return interfaces_; }
    /// Mirror rectangle for an interface subvolume.
    const Rect& mirror_of(int subvolume) const;

    bool has_micro() const { return has_micro_; }
    bool has_meso() const { return !subvolumes_.empty(); }

    /// Region containing a point (half-open cells, closed outer boundary).
    int locate_region(Point p) const;
    Location locate(Point p) const;

private:
    struct RegionGrid {
        double x0 = 0.0;
        double y0 = 0.0;
        double h = 0.0;
        int nx = 0;
        int ny = 0;
        std::vector<int> cells; // row-major, -1 inside a ring's hole
    };

    bool region_contains(int region, Point p) const;
    int grid_cell(const RegionGrid& grid, Point p) const;

    Environment env_;
    std::vector<RegionSpec> regions_;
    std::vector<std::vector<Rect>> region_pieces_;
    std::vector<RegionGrid> grids_;
    std::vector<Subvolume> subvolumes_;
    std::vector<std::size_t> region_counts_;
    std::vector<NeighborLink> links_;
    std::vector<std::size_t> link_offsets_;
    std::vector<InterfaceSubvolume> interfaces_;
    std::vector<int> interface_slot_; // subvolume id -> index in interfaces_, or -1
    bool has_micro_ = false;
};

inline Partition build_partition(const Environment& env, std::vector<RegionSpec> regions)
{
    return Partition::build(env, std::move(regions));
}

} // namespace mcsim
