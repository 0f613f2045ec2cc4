#pragma once

#include "mcsim/geometry.hpp"
#include "mcsim/rng.hpp"

#include <cstddef>
#include <vector>

namespace mcsim {

/// One Brownian displacement: each axis moves by n * sqrt(2 D dt).
Point brownian_step(Point position, double diffusion, double dt, double n1, double n2);

/// Mirrors a point back into [0, width] x [0, height], folding each axis
/// independently as many times as needed.
Point reflect(Point candidate, const Environment& env);

struct MicroAdvance {
    std::size_t stepped = 0;       // molecules moved (one micro event each)
    std::vector<Point> transfers;  // final positions that landed in a mesoscopic region
};

/// Steps every molecule once, reflects it off the environment boundary and
/// removes those whose final position lies in a mesoscopic region. Survivors
/// keep their relative order; normals are drawn in molecule order.
MicroAdvance advance_all(std::vector<Point>& molecules, double diffusion, double dt, const Partition& partition,
                         Rng& rng);

/// `count` points drawn independently and uniformly over `rect`.
std::vector<Point> place_uniform(const Rect& rect, std::size_t count, Rng& rng);

} // namespace mcsim
