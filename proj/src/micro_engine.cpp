#include "mcsim/micro_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace mcsim {

namespace {

// Folds x onto [0, length] as a triangle wave of period 2 * length.
double fold(double x, double length)
{
    if (x >= 0.0 && x <= length)
        return x;
    const double period = 2.0 * length;
    double r = std::fmod(x, period);
    if (r < 0.0)
        r += period;
    return r <= length ? r : period - r;
}

} // namespace

Point brownian_step(Point position, double diffusion, double dt, double n1, double n2)
{
    const double scale = std::sqrt(2.0 * diffusion * dt);
    return {position.x + n1 * scale, position.y + n2 * scale};
}

Point reflect(Point candidate, const Environment& env)
{
    if (!std::isfinite(candidate.x) || !std::isfinite(candidate.y))
        throw std::invalid_argument("reflect: non-finite coordinate");
    return {fold(candidate.x, env.width), fold(candidate.y, env.height)};
}

MicroAdvance advance_all(std::vector<Point>& molecules, double diffusion, double dt, const Partition& partition,
                         Rng& rng)
{
    MicroAdvance result;
    result.stepped = molecules.size();
    const double scale = std::sqrt(2.0 * diffusion * dt);
    const Environment& env = partition.environment();
    const bool any_meso = partition.has_meso();
    std::size_t kept = 0;
    for (std::size_t i = 0; i < molecules.size(); ++i) {
        const double n1 = rng.normal();
        const double n2 = rng.normal();
        const Point p = reflect({molecules[i].x + n1 * scale, molecules[i].y + n2 * scale}, env);
        if (any_meso && partition.region(partition.locate_region(p)).regime == Regime::Mesoscopic)
            result.transfers.push_back(p);
        else
            molecules[kept++] = p;
    }
    molecules.resize(kept);
    return result;
}

std::vector<Point> place_uniform(const Rect& rect, std::size_t count, Rng& rng)
{
    if (rect.degenerate())
        throw std::invalid_argument("place_uniform: degenerate rectangle");
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.uniform(rect.x0, rect.x1);
        const double y = rng.uniform(rect.y0, rect.y1);
        out.push_back({x, y});
    }
    return out;
}

} // namespace mcsim
