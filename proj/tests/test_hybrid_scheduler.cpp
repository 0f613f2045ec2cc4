#include "mcsim/hybrid_scheduler.hpp"
#include "mcsim/scenarios.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace mcsim;

namespace {

ScenarioConfig short_config(Model model, TestKind test, double t_f)
{
    ScenarioConfig c = reference_scenario(model, test);
    c.final_time = t_f;
    return c;
}

Partition partition_for(const ScenarioConfig& c) { return build_partition(c.environment, c.regions); }

} // namespace

TEST_CASE("pure mesoscopic runs never step molecules")
{
    auto c = short_config(Model::Meso, TestKind::Impulsive, 5.0);
    c.molecules = 500;
    const auto p = partition_for(c);
    auto state = impulsive_init(c, p, Rng(3));
    CHECK(state.micro_time() == kNever);
    state.run();
    CHECK(state.counters().micro == 0);
    CHECK(state.counters().meso > 0);
    CHECK(state.molecules().empty());
    CHECK(state.conservation_failures() == 0);
    CHECK(state.meso().total() == 500);
    CHECK(state.series().rx.size() == 5);
}

TEST_CASE("pure microscopic runs step every molecule every tick")
{
    auto c = short_config(Model::Micro, TestKind::Impulsive, 10.0);
    const auto p = partition_for(c);
    const auto r = run_realization(c, p, 11, 0);
    CHECK(r.counters.meso == 0);
    CHECK(r.counters.micro == 40u * 10'000u);
    const auto [micro, meso] = events_per_molecule_time(r.counters, c.molecules, c.final_time);
    CHECK(micro == 4.0);
    CHECK(meso == 0.0);
    CHECK(r.conservation_failures == 0);
}

TEST_CASE("hybrid runs conserve molecules across both regimes")
{
    for (Model m : {Model::Hyb, Model::HybMs}) {
        auto c = short_config(m, TestKind::Uniform, 5.0);
        c.molecules = 2000;
        const auto p = partition_for(c);
        auto state = uniform_init(c, p, Rng(17));
        CHECK(state.molecule_total() == 2000);
        while (!state.finished()) {
            state.step();
            REQUIRE(state.molecule_total() == 2000);
        }
        CHECK(state.counters().micro > 0);
        CHECK(state.counters().meso > 0);
        CHECK(state.conservation_failures() == 0);
    }
}

TEST_CASE("a mesoscopic event into the virtual subvolume creates a molecule in the mirror")
{
    auto c = short_config(Model::Hyb, TestKind::Impulsive, 100.0);
    const auto p = partition_for(c);
    const Point at{13.5, 20.5};
    const int sv = *p.locate(at).subvolume;
    REQUIRE(p.subvolume(sv).is_interface);
    const Rect mirror = p.mirror_of(sv);
    CHECK(mirror.x0 == doctest::Approx(14.0));
    CHECK(mirror.x1 == doctest::Approx(15.0));

    int direct = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Realization state(c, p, Rng(seed));
        const Point one[] = {at};
        state.release_points(one);
        int holder = sv;
        for (int k = 0; k < 100000 && state.molecules().empty(); ++k) {
            const auto& counts = state.meso().counts;
            holder = static_cast<int>(std::find(counts.begin(), counts.end(), 1) - counts.begin());
            state.meso_branch();
        }
        REQUIRE(state.molecules().size() == 1);
        REQUIRE(p.subvolume(holder).is_interface);
        CHECK(p.mirror_of(holder).contains(state.molecules().front()));
        direct += holder == sv ? 1 : 0;
        CHECK(state.meso().total() == 0);
        CHECK(state.meso_time() == kNever);
        CHECK(state.molecule_total() == 1);
    }
    CHECK(direct > 0);
}

TEST_CASE("molecules entering the mesoscopic regime go to the nearest interface subvolume")
{
    auto c = short_config(Model::Hyb, TestKind::Impulsive, 100.0);
    const auto p = partition_for(c);
    Realization state(c, p, Rng(1));

    // (9, 20) is equally far from the interface centers (13.5, 19.5) and (13.5, 20.5).
    const int lower = *p.locate({13.5, 19.5}).subvolume;
    const int upper = *p.locate({13.5, 20.5}).subvolume;
    REQUIRE(lower != upper);
    CHECK(state.accept_transfer({9.0, 20.0}) == std::min(lower, upper));

    // Brute-force nearest-center oracle for random landing points in the rings.
    Rng rng(99);
    int accepted = 1;
    for (int i = 0; i < 2000; ++i) {
        Point q{rng.uniform(0.0, kEnvWidth), rng.uniform(0.0, kEnvHeight)};
        if (kInnerRegion.contains(q))
            continue;
        int best = -1;
        double best_d = kNever;
        for (const auto& sv : p.subvolumes()) {
            if (!sv.is_interface)
                continue;
            const double d = std::hypot(q.x - sv.center.x, q.y - sv.center.y);
            if (d < best_d) {
                best_d = d;
                best = sv.id;
            }
        }
        CHECK(state.accept_transfer(q) == best);
        ++accepted;
    }
    CHECK(state.meso().total() == accepted);
}

TEST_CASE("observation catch-up records every passed threshold")
{
    auto c = short_config(Model::Micro, TestKind::Impulsive, 10.0);
    c.molecules = 10;
    c.micro_step = 3.2;
    const auto p = partition_for(c);
    auto state = impulsive_init(c, p, Rng(2));
    CHECK(state.record_observations() == 0);
    state.step();
    CHECK(state.time() == doctest::Approx(3.2));
    REQUIRE(state.series().times.size() == 3);
    CHECK(state.series().times[0] == 1.0);
    CHECK(state.series().times[2] == 3.0);
    CHECK(state.next_observation_index() == 4);
    state.step();
    CHECK(state.series().times.size() == 6);
}

TEST_CASE("the receiver counts molecules in both regimes")
{
    SUBCASE("microscopic")
    {
        auto c = short_config(Model::Micro, TestKind::Impulsive, 3.0);
        c.diffusion = 0.0;
        const auto p = partition_for(c);
        Realization state(c, p, Rng(1));
        const Point pts[] = {{25.5, 19.5}, {25.9, 19.1}, {26.0, 19.5}, {24.9, 19.5}};
        state.release_points(pts);
        state.run();
        REQUIRE(state.series().rx.size() == 3);
        for (double v : state.series().rx)
            CHECK(v == 2.0);
    }
    SUBCASE("mesoscopic")
    {
        auto c = short_config(Model::Meso, TestKind::Impulsive, 100.0);
        c.diffusion = 0.0;
        const auto p = partition_for(c);
        Realization state(c, p, Rng(1));
        state.release(c.receiver, 7);
        state.release(c.transmitter, 5);
        state.run();
        REQUIRE(state.series().rx.size() == 100);
        for (double v : state.series().rx)
            CHECK(v == 7.0);
    }
    SUBCASE("coarse mesh")
    {
        // With 4 x 4 subvolumes the 1 x 1 receiver cuts through a subvolume.
        auto c = short_config(Model::Meso, TestKind::Impulsive, 10.0);
        c.regions = {RegionSpec{"V", {0, 0, kEnvWidth, kEnvHeight}, std::nullopt, Regime::Mesoscopic, 4.0}};
        const auto p = partition_for(c);
        CHECK_THROWS_AS(Realization(c, p, Rng(1)), GeometryError);
    }
}

TEST_CASE("same seed gives the same realization")
{
    auto c = short_config(Model::HybMs, TestKind::Impulsive, 8.0);
    c.molecules = 3000;
    const auto p = partition_for(c);
    const auto a = run_realization(c, p, 5, 2);
    const auto b = run_realization(c, p, 5, 2);
    const auto other = run_realization(c, p, 5, 3);
    CHECK(a.series.rx == b.series.rx);
    CHECK(a.counters.micro == b.counters.micro);
    CHECK(a.counters.meso == b.counters.meso);
    CHECK((a.series.rx != other.series.rx || a.counters.meso != other.counters.meso));
}

TEST_CASE("the observation at the final time is optional")
{
    auto c = short_config(Model::Meso, TestKind::Impulsive, 4.0);
    c.molecules = 100;
    const auto p = partition_for(c);
    CHECK(run_realization(c, p, 1, 0).series.rx.size() == 4);
    c.record_at_final = false;
    CHECK(run_realization(c, p, 1, 0).series.rx.size() == 3);
}

TEST_CASE("extra releases are added at their scheduled time")
{
    auto c = short_config(Model::Meso, TestKind::Impulsive, 6.0);
    c.molecules = 100;
    c.extra_releases = {{2.5, 40}};
    const auto p = partition_for(c);
    auto state = impulsive_init(c, p, Rng(4));
    while (!state.finished()) {
        state.step();
        if (state.time() < 2.5)
            CHECK(state.molecule_total() == 100);
    }
    CHECK(state.molecule_total() == 140);
    CHECK(state.released() == 140);
    CHECK(state.conservation_failures() == 0);
}
