#include "mcsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace mcsim {

namespace {

constexpr double kTol = 1e-9;

bool is_multiple(double length, double h)
{
    const double ratio = length / h;
    return std::abs(ratio - std::round(ratio)) <= kTol * std::max(1.0, std::abs(ratio));
}

bool approx(double a, double b) { return std::abs(a - b) <= kTol * std::max({1.0, std::abs(a), std::abs(b)}); }

long long face_key(double coordinate) { return std::llround(coordinate * 1e7); }

std::string describe(const Rect& r)
{
    std::ostringstream os;
    os << "[" << r.x0 << ", " << r.x1 << "] x [" << r.y0 << ", " << r.y1 << "]";
    return os.str();
}

double covered_area(const Rect& r, std::span<const Rect> pieces)
{
    double area = 0.0;
    for (const auto& p : pieces)
        area += intersection_area(r, p);
    return area;
}

void validate_region(const Environment& env, const RegionSpec& region)
{
    const Rect& o = region.outer;
    if (o.degenerate())
        throw GeometryError(region.id, "degenerate outer rectangle " + describe(o));
    if (o.x0 < -kTol || o.y0 < -kTol || o.x1 > env.width + kTol || o.y1 > env.height + kTol)
        throw GeometryError(region.id, "extends outside the environment");
    if (region.inner) {
        const Rect& i = *region.inner;
        if (i.degenerate())
            throw GeometryError(region.id, "degenerate inner rectangle " + describe(i));
        if (i.x0 < o.x0 - kTol || i.y0 < o.y0 - kTol || i.x1 > o.x1 + kTol || i.y1 > o.y1 + kTol)
            throw GeometryError(region.id, "inner rectangle is not contained in the outer rectangle");
    }
    if (region.regime == Regime::Microscopic)
        return;

    const double h = region.subvolume_width;
    if (!(h > 0.0) || !std::isfinite(h))
        throw GeometryError(region.id, "mesoscopic region needs a positive subvolume width");
    std::vector<double> xs{o.x1};
    std::vector<double> ys{o.y1};
    if (region.inner) {
        xs.insert(xs.end(), {region.inner->x0, region.inner->x1});
        ys.insert(ys.end(), {region.inner->y0, region.inner->y1});
    }
    for (double x : xs)
        if (!is_multiple(x - o.x0, h))
            throw GeometryError(region.id, "extent is not tileable by squares of width " + std::to_string(h));
    for (double y : ys)
        if (!is_multiple(y - o.y0, h))
            throw GeometryError(region.id, "extent is not tileable by squares of width " + std::to_string(h));
}

// Outside strip of thickness `depth` adjacent to one face of a square.
enum class Face { Left, Right, Bottom, Top };
constexpr Face kFaces[] = {Face::Left, Face::Right, Face::Bottom, Face::Top};

Rect outside_strip(const Rect& b, Face face, double depth)
{
    switch (face) {
    case Face::Left: return {b.x0 - depth, b.y0, b.x0, b.y1};
    case Face::Right: return {b.x1, b.y0, b.x1 + depth, b.y1};
    case Face::Bottom: return {b.x0, b.y0 - depth, b.x1, b.y0};
    case Face::Top: return {b.x0, b.y1, b.x1, b.y1 + depth};
    }
    return b;
}

} // namespace

double intersection_area(const Rect& a, const Rect& b)
{
    const double w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    const double h = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

std::vector<Rect> RegionSpec::pieces() const
{
    if (!inner)
        return {outer};
    const Rect& o = outer;
    const Rect& i = *inner;
    std::vector<Rect> out;
    for (const Rect& r : {Rect{o.x0, o.y0, o.x1, i.y0}, Rect{o.x0, i.y1, o.x1, o.y1}, Rect{o.x0, i.y0, i.x0, i.y1},
                          Rect{i.x1, i.y0, o.x1, i.y1}})
        if (r.x1 - r.x0 > kTol && r.y1 - r.y0 > kTol)
            out.push_back(r);
    return out;
}

Partition Partition::build(const Environment& env, std::vector<RegionSpec> regions)
{
    if (!(env.width > 0.0) || !(env.height > 0.0))
        throw GeometryError("", "environment width and height must be positive");
    if (regions.empty())
        throw GeometryError("", "no regions declared");

    Partition part;
    part.env_ = env;
    part.regions_ = std::move(regions);
    const auto& regs = part.regions_;

    for (const auto& r : regs) {
        validate_region(env, r);
        part.region_pieces_.push_back(r.pieces());
        if (r.regime == Regime::Microscopic)
            part.has_micro_ = true;
    }
    for (std::size_t a = 0; a < regs.size(); ++a)
        for (std::size_t b = a + 1; b < regs.size(); ++b) {
            if (regs[a].id == regs[b].id)
                throw GeometryError(regs[b].id, "duplicate region id");
            double shared = 0.0;
            for (const auto& pa : part.region_pieces_[a])
                shared += covered_area(pa, part.region_pieces_[b]);
            if (shared > kTol * env.width * env.height)
                throw GeometryError(regs[b].id, "overlaps region '" + regs[a].id + "'");
        }
    double total = 0.0;
    for (const auto& r : regs)
        total += r.area();
    const double env_area = env.width * env.height;
    if (std::abs(total - env_area) > 1e-9 * env_area)
        throw GeometryError("", "regions do not cover the environment (covered area " + std::to_string(total) +
                                    " of " + std::to_string(env_area) + ")");

    // Subvolumes, row-major per region, regions in declaration order.
    part.grids_.resize(regs.size());
    part.region_counts_.assign(regs.size(), 0);
    for (std::size_t r = 0; r < regs.size(); ++r) {
        const auto& spec = regs[r];
        if (spec.regime != Regime::Mesoscopic)
            continue;
        RegionGrid& g = part.grids_[r];
        g.x0 = spec.outer.x0;
        g.y0 = spec.outer.y0;
        g.h = spec.subvolume_width;
        g.nx = static_cast<int>(std::lround(spec.outer.width() / g.h));
        g.ny = static_cast<int>(std::lround(spec.outer.height() / g.h));
        g.cells.assign(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny), -1);
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const Point c{g.x0 + (ix + 0.5) * g.h, g.y0 + (iy + 0.5) * g.h};
                if (spec.inner && c.x > spec.inner->x0 && c.x < spec.inner->x1 && c.y > spec.inner->y0 &&
                    c.y < spec.inner->y1)
                    continue;
                Subvolume sv;
                sv.id = static_cast<int>(part.subvolumes_.size());
                sv.center = c;
                sv.width = g.h;
                sv.region = static_cast<int>(r);
                g.cells[static_cast<std::size_t>(iy) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(ix)] =
                    sv.id;
                part.subvolumes_.push_back(sv);
                ++part.region_counts_[r];
            }
    }

    // Meso/meso adjacency through coincident faces.
    std::map<long long, std::vector<int>> by_x0, by_x1, by_y0, by_y1;
    for (const auto& sv : part.subvolumes_) {
        const Rect b = sv.bounds();
        by_x0[face_key(b.x0)].push_back(sv.id);
        by_x1[face_key(b.x1)].push_back(sv.id);
        by_y0[face_key(b.y0)].push_back(sv.id);
        by_y1[face_key(b.y1)].push_back(sv.id);
    }
    const auto lookup = [](const std::map<long long, std::vector<int>>& m, double c) -> const std::vector<int>* {
        auto it = m.find(face_key(c));
        return it == m.end() ? nullptr : &it->second;
    };

    std::vector<std::vector<NeighborLink>> per_source(part.subvolumes_.size());
    for (const auto& sv : part.subvolumes_) {
        const Rect b = sv.bounds();
        auto add_along_y = [&](const std::vector<int>* candidates) {
            if (!candidates)
                return;
            for (int j : *candidates) {
                const Rect o = part.subvolumes_[static_cast<std::size_t>(j)].bounds();
                const double overlap = std::min(b.y1, o.y1) - std::max(b.y0, o.y0);
                if (overlap > kTol)
                    per_source[static_cast<std::size_t>(sv.id)].push_back(
                        {sv.id, j, std::min(overlap, std::min(sv.width, o.width())),
                         part.subvolumes_[static_cast<std::size_t>(j)].width});
            }
        };
        auto add_along_x = [&](const std::vector<int>* candidates) {
            if (!candidates)
                return;
            for (int j : *candidates) {
                const Rect o = part.subvolumes_[static_cast<std::size_t>(j)].bounds();
                const double overlap = std::min(b.x1, o.x1) - std::max(b.x0, o.x0);
                if (overlap > kTol)
                    per_source[static_cast<std::size_t>(sv.id)].push_back(
                        {sv.id, j, std::min(overlap, std::min(sv.width, o.width())),
                         part.subvolumes_[static_cast<std::size_t>(j)].width});
            }
        };
        add_along_y(lookup(by_x0, b.x1)); // right neighbors
        add_along_y(lookup(by_x1, b.x0)); // left neighbors
        add_along_x(lookup(by_y0, b.y1)); // top neighbors
        add_along_x(lookup(by_y1, b.y0)); // bottom neighbors
    }

    // Micro/meso interface classification.
    part.interface_slot_.assign(part.subvolumes_.size(), -1);
    for (auto& sv : part.subvolumes_) {
        const Rect b = sv.bounds();
        const double h = sv.width;
        int faces_on_interface = 0;
        for (std::size_t r = 0; r < regs.size(); ++r) {
            if (regs[r].regime != Regime::Microscopic)
                continue;
            for (Face face : kFaces) {
                const double depth = 1e-6 * h;
                const double touching = covered_area(outside_strip(b, face, depth), part.region_pieces_[r]) / depth;
                if (touching <= 1e-6 * h)
                    continue;
                if (std::abs(touching - h) > 1e-6 * h)
                    throw GeometryError(regs[r].id, "microscopic region is not surrounded: subvolume " +
                                                        std::to_string(sv.id) + " only partially borders it");
                const Rect mirror = outside_strip(b, face, h);
                if (std::abs(covered_area(mirror, part.region_pieces_[r]) - h * h) > 1e-9 * h * h)
                    throw GeometryError(regs[r].id, "microscopic region cannot hold the virtual mirror of subvolume " +
                                                        std::to_string(sv.id));
                ++faces_on_interface;
                part.interface_slot_[static_cast<std::size_t>(sv.id)] = static_cast<int>(part.interfaces_.size());
                part.interfaces_.push_back({sv.id, static_cast<int>(r), mirror});
            }
        }
        if (faces_on_interface > 1)
            throw GeometryError(regs[part.interfaces_.back().micro_region].id,
                                "microscopic region is not surrounded: subvolume " + std::to_string(sv.id) +
                                    " has more than one face on the interface");
        if (faces_on_interface == 1) {
            sv.is_interface = true;
            per_source[static_cast<std::size_t>(sv.id)].push_back({sv.id, kVirtualMicro, h, h});
        }
    }
    for (std::size_t r = 0; r < regs.size(); ++r) {
        std::optional<double> width;
        for (const auto& itf : part.interfaces_) {
            if (itf.micro_region != static_cast<int>(r))
                continue;
            const double w = part.subvolumes_[static_cast<std::size_t>(itf.subvolume)].width;
            if (width && !approx(*width, w))
                throw GeometryError(regs[r].id, "interface subvolumes of mixed width");
            width = w;
        }
    }

    part.link_offsets_.assign(1, 0);
    for (auto& links : per_source) {
        std::stable_sort(links.begin(), links.end(), [](const NeighborLink& a, const NeighborLink& b) {
            const auto rank = [](int d) { return d == kVirtualMicro ? std::numeric_limits<int>::max() : d; };
            return rank(a.dest) < rank(b.dest);
        });
        part.links_.insert(part.links_.end(), links.begin(), links.end());
        part.link_offsets_.push_back(part.links_.size());
    }
    return part;
}

int Partition::region_index(const std::string& id) const
{
    for (std::size_t r = 0; r < regions_.size(); ++r)
        if (regions_[r].id == id)
            return static_cast<int>(r);
    throw std::out_of_range("unknown region '" + id + "'");
}

std::size_t Partition::region_subvolume_count(int region) const
{
    return region_counts_.at(static_cast<std::size_t>(region));
}

std::span<const NeighborLink> Partition::links_from(int subvolume) const
{
    const auto s = static_cast<std::size_t>(subvolume);
    if (s + 1 >= link_offsets_.size())
        throw std::out_of_range("unknown subvolume " + std::to_string(subvolume));
    return std::span<const NeighborLink>(links_).subspan(link_offsets_[s], link_offsets_[s + 1] - link_offsets_[s]);
}

std::vector<InterfaceSubvolume> Partition::interface_subvolumes(int micro_region) const
{
    if (region(micro_region).regime != Regime::Microscopic)
        throw GeometryError(region(micro_region).id, "region is not microscopic");
    std::vector<InterfaceSubvolume> out;
    for (const auto& itf : interfaces_)
        if (itf.micro_region == micro_region)
            out.push_back(itf);
    return out;
}

const Rect& Partition::mirror_of(int subvolume) const
{
    const int slot = interface_slot_.at(static_cast<std::size_t>(subvolume));
    if (slot < 0)
        throw std::out_of_range("subvolume " + std::to_string(subvolume) + " is not on an interface");
    return interfaces_[static_cast<std::size_t>(slot)].mirror;
}

bool Partition::region_contains(int region, Point p) const
{
    for (const auto& piece : region_pieces_[static_cast<std::size_t>(region)]) {
        const bool in_x = p.x >= piece.x0 && (p.x < piece.x1 || (p.x == env_.width && approx(piece.x1, env_.width)));
        const bool in_y = p.y >= piece.y0 && (p.y < piece.y1 || (p.y == env_.height && approx(piece.y1, env_.height)));
        if (in_x && in_y)
            return true;
    }
    return false;
}

int Partition::locate_region(Point p) const
{
    if (!(p.x >= 0.0 && p.x <= env_.width && p.y >= 0.0 && p.y <= env_.height))
        throw std::out_of_range("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                ") lies outside the environment");
    for (std::size_t r = 0; r < regions_.size(); ++r)
        if (region_contains(static_cast<int>(r), p))
            return static_cast<int>(r);
    throw std::logic_error("partition does not cover point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
}

int Partition::grid_cell(const RegionGrid& g, Point p) const
{
    const int ix = std::clamp(static_cast<int>(std::floor((p.x - g.x0) / g.h)), 0, g.nx - 1);
    const int iy = std::clamp(static_cast<int>(std::floor((p.y - g.y0) / g.h)), 0, g.ny - 1);
    return g.cells[static_cast<std::size_t>(iy) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(ix)];
}

Location Partition::locate(Point p) const
{
    Location loc;
    loc.region = locate_region(p);
    if (regions_[static_cast<std::size_t>(loc.region)].regime == Regime::Mesoscopic) {
        const int cell = grid_cell(grids_[static_cast<std::size_t>(loc.region)], p);
        if (cell < 0)
            throw std::logic_error("point resolved into the hole of region '" +
                                   regions_[static_cast<std::size_t>(loc.region)].id + "'");
        loc.subvolume = cell;
    }
    return loc;
}

} // namespace mcsim
