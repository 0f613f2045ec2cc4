#pragma once

#include "mcsim/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcsim {

enum class Model { Micro, Meso, MesoMs, Hyb, HybMs, Custom };
enum class TestKind { Impulsive, Uniform };

/// Additional transmitter release after t = 0 (modulation).
struct Release {
    double time = 0.0;
    std::int64_t molecules = 0;
};

struct ScenarioConfig {
    std::string name;
    Environment environment;
    std::vector<RegionSpec> regions;
    Model model = Model::Custom;

    double diffusion = 1.0;
    double micro_step = 0.25;
    Rect transmitter;
    Rect receiver;

    TestKind test = TestKind::Impulsive;
    std::int64_t molecules = 0;
    double final_time = 100.0;
    double observation_interval = 1.0;
    bool record_at_final = true;
    std::uint64_t rebuild_interval = 1'000'000;
    std::vector<Release> extra_releases;

    std::size_t realizations = 1;
    std::uint64_t seed = 1;

    /// Number of grid points k * t_ob considered observable.
    std::size_t observation_count() const;
    /// Molecules released over the whole run.
    std::int64_t released_molecules() const;
};

std::string to_string(Model model);
std::string to_string(TestKind test);
std::string to_string(Regime regime);

} // namespace mcsim
