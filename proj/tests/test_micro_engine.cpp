#include "mcsim/micro_engine.hpp"
#include "mcsim/scenarios.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>

using namespace mcsim;

TEST_CASE("brownian step")
{
    const Point p{3.0, 4.0};
    const Point same = brownian_step(p, 1.0, 0.25, 0.0, 0.0);
    CHECK(same.x == p.x);
    CHECK(same.y == p.y);
    const Point moved = brownian_step(p, 1.0, 0.25, 1.0, 0.0);
    CHECK(moved.x - p.x == doctest::Approx(std::sqrt(0.5)));
    CHECK(moved.x - p.x == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(moved.y == p.y);
}

TEST_CASE("displacement moments over 1e5 steps")
{
    Rng rng(123);
    constexpr int n = 100000;
    const double d = 1.0;
    const double dt = 0.25;
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point q = brownian_step({0.0, 0.0}, d, dt, rng.normal(), rng.normal());
        sx += q.x;
        sy += q.y;
        sxx += q.x * q.x;
        syy += q.y * q.y;
    }
    const double var_x = (sxx - sx * sx / n) / (n - 1);
    const double var_y = (syy - sy * sy / n) / (n - 1);
    const double target = 2.0 * d * dt;
    CHECK(std::abs(var_x - target) <= 0.02 * target);
    CHECK(std::abs(var_y - target) <= 0.02 * target);
    const double sigma = std::sqrt(target);
    CHECK(std::abs(sx / n) < 3.0 * sigma / std::sqrt(n));
    CHECK(std::abs(sy / n) < 3.0 * sigma / std::sqrt(n));
}

TEST_CASE("reflection folds each axis")
{
    const Environment env{48.0, 40.0};
    CHECK(reflect({-1.0, 5.0}, env).x == doctest::Approx(1.0));
    CHECK(reflect({49.0, 5.0}, env).x == doctest::Approx(47.0));
    CHECK(reflect({-97.0, 5.0}, env).x == doctest::Approx(1.0));
    CHECK(reflect({5.0, -3.0}, env).y == doctest::Approx(3.0));
    CHECK(reflect({5.0, 41.5}, env).y == doctest::Approx(38.5));
    const Point both = reflect({-2.0, 42.0}, env);
    CHECK(both.x == doctest::Approx(2.0));
    CHECK(both.y == doctest::Approx(38.0));
    CHECK_THROWS_AS(reflect({std::numeric_limits<double>::quiet_NaN(), 1.0}, env), std::invalid_argument);
    CHECK_THROWS_AS(reflect({std::numeric_limits<double>::infinity(), 1.0}, env), std::invalid_argument);
}

TEST_CASE("reflection lands inside and is idempotent on interior points")
{
    const Environment env{48.0, 40.0};
    Rng rng(5);
    for (int i = 0; i < 20000; ++i) {
        const Point c{rng.uniform(-300.0, 300.0), rng.uniform(-300.0, 300.0)};
        const Point r = reflect(c, env);
        CHECK(r.x >= 0.0);
        CHECK(r.x <= 48.0);
        CHECK(r.y >= 0.0);
        CHECK(r.y <= 40.0);
        const Point again = reflect(r, env);
        CHECK(again.x == r.x);
        CHECK(again.y == r.y);
    }
}

TEST_CASE("advance_all hands molecules over to the mesoscopic regime")
{
    const auto hyb = build_partition({kEnvWidth, kEnvHeight}, reference_regions(Model::Hyb));
    Rng rng(8);

    std::vector<Point> none;
    const auto empty = advance_all(none, 1.0, 0.25, hyb, rng);
    CHECK(empty.stepped == 0);
    CHECK(empty.transfers.empty());

    // A molecule right at V1's left edge with a huge step to the left ends in V2/V3.
    std::vector<Point> molecules{{14.01, 20.0}, {24.0, 20.0}};
    std::size_t total_transfers = 0;
    std::size_t steps = 0;
    for (int k = 0; k < 50 && !molecules.empty(); ++k) {
        const std::size_t before = molecules.size();
        const auto moved = advance_all(molecules, 1.0, 0.25, hyb, rng);
        steps += moved.stepped;
        CHECK(moved.stepped == before);
        CHECK(molecules.size() + moved.transfers.size() == before);
        for (const auto& p : moved.transfers)
            CHECK(hyb.region(hyb.locate_region(p)).regime == Regime::Mesoscopic);
        for (const auto& p : molecules)
            CHECK(hyb.region(hyb.locate_region(p)).regime == Regime::Microscopic);
        total_transfers += moved.transfers.size();
    }
    CHECK(total_transfers >= 1);
}

TEST_CASE("advance_all with zero diffusion is the identity")
{
    const auto micro = build_partition({kEnvWidth, kEnvHeight}, reference_regions(Model::Micro));
    Rng rng(1);
    std::vector<Point> molecules{{1.0, 2.0}, {47.5, 39.5}, {20.0, 20.0}};
    const auto copy = molecules;
    const auto moved = advance_all(molecules, 0.0, 0.25, micro, rng);
    CHECK(moved.transfers.empty());
    REQUIRE(molecules.size() == copy.size());
    for (std::size_t i = 0; i < copy.size(); ++i) {
        CHECK(molecules[i].x == copy[i].x);
        CHECK(molecules[i].y == copy[i].y);
    }
}

TEST_CASE("uniform placement")
{
    Rng rng(21);
    CHECK(place_uniform({0, 0, 1, 1}, 0, rng).empty());
    const Rect unit{2.0, 3.0, 3.0, 4.0};
    const auto pts = place_uniform(unit, 100000, rng);
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        CHECK(unit.contains(p));
        mx += p.x;
        my += p.y;
    }
    CHECK(std::abs(mx / pts.size() - 2.5) <= 0.005);
    CHECK(std::abs(my / pts.size() - 3.5) <= 0.005);
    CHECK_THROWS_AS(place_uniform({0, 0, 0, 1}, 3, rng), std::invalid_argument);
}
