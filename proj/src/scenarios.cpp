#include "mcsim/scenarios.hpp"

#include "mcsim/micro_engine.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace mcsim {

namespace {

struct Layout {
    Model model;
    const char* name;
    std::optional<double> h1, h2, h3; // nullopt = microscopic
};

constexpr Layout kLayouts[] = {
    {Model::Micro, "micro", std::nullopt, std::nullopt, std::nullopt},
    {Model::Meso, "meso", 1.0, 1.0, 1.0},
    {Model::MesoMs, "meso-ms", 1.0, 2.0, 4.0},
    {Model::Hyb, "hyb", std::nullopt, 1.0, 1.0},
    {Model::HybMs, "hyb-ms", std::nullopt, 1.0, 2.0},
};

const Layout& layout_of(Model model)
{
    for (const auto& l : kLayouts)
        if (l.model == model)
            return l;
    throw std::invalid_argument("no reference layout for model " + to_string(model));
}

RegionSpec make_region(std::string id, Rect outer, std::optional<Rect> inner, std::optional<double> h)
{
    RegionSpec r;
    r.id = std::move(id);
    r.outer = outer;
    r.inner = inner;
    r.regime = h ? Regime::Mesoscopic : Regime::Microscopic;
    r.subvolume_width = h.value_or(0.0);
    return r;
}

} // namespace

std::size_t ScenarioConfig::observation_count() const
{
    if (!(observation_interval > 0.0) || !(final_time > 0.0))
        return 0;
    const double ratio = final_time / observation_interval;
    auto n = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    if (!record_at_final && n > 0 && std::abs(static_cast<double>(n) * observation_interval - final_time) <=
                                         1e-9 * final_time)
        --n;
    return n;
}

std::int64_t ScenarioConfig::released_molecules() const
{
    std::int64_t total = molecules;
    for (const auto& r : extra_releases)
        if (r.time < final_time)
            total += r.molecules;
    return total;
}

std::string to_string(Model model)
{
    switch (model) {
    case Model::Micro: return "MICRO";
    case Model::Meso: return "MESO";
    case Model::MesoMs: return "MESO-MS";
    case Model::Hyb: return "HYB";
    case Model::HybMs: return "HYB-MS";
    case Model::Custom: return "CUSTOM";
    }
    return "?";
}

std::string to_string(TestKind test) { return test == TestKind::Impulsive ? "impulsive" : "uniform"; }

std::string to_string(Regime regime) { return regime == Regime::Microscopic ? "micro" : "meso"; }

Model parse_model(std::string_view text)
{
    for (const auto& l : kLayouts)
        if (text == l.name)
            return l.model;
    if (text == "custom")
        return Model::Custom;
    throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

TestKind parse_test(std::string_view text)
{
    if (text == "impulsive")
        return TestKind::Impulsive;
    if (text == "uniform")
        return TestKind::Uniform;
    throw std::invalid_argument("unknown test '" + std::string(text) + "'");
}

std::vector<RegionSpec> reference_regions(Model model)
{
    const Layout& l = layout_of(model);
    return {
        make_region("V1", kInnerRegion, std::nullopt, l.h1),
        make_region("V2", kMiddleRegion, kInnerRegion, l.h2),
        make_region("V3", Rect{0.0, 0.0, kEnvWidth, kEnvHeight}, kMiddleRegion, l.h3),
    };
}

ScenarioConfig reference_scenario(Model model, TestKind test, bool full_scale)
{
    ScenarioConfig c;
    c.name = to_string(test) + "-" + layout_of(model).name + (full_scale ? "-full" : "");
    c.environment = {kEnvWidth, kEnvHeight};
    c.regions = reference_regions(model);
    c.model = model;
    c.diffusion = 1.0;
    c.micro_step = 0.25;
    c.transmitter = kTransmitter;
    c.receiver = kReceiver;
    c.test = test;
    c.observation_interval = 1.0;
    if (test == TestKind::Impulsive) {
        c.molecules = 10'000;
        c.final_time = 100.0;
        c.realizations = full_scale ? kFullImpulsiveRealizations : kDeskImpulsiveRealizations;
    } else {
        c.molecules = 9'600;
        c.final_time = 2'000.0;
        c.realizations = full_scale ? kFullUniformRealizations : kDeskUniformRealizations;
    }
    return c;
}

ScenarioConfig builtin_scenario(std::string_view name)
{
    std::string_view rest = name;
    bool full = false;
    if (rest.size() > 5 && rest.substr(rest.size() - 5) == "-full") {
        full = true;
        rest.remove_suffix(5);
    }
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos)
        throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
    const TestKind test = parse_test(rest.substr(0, dash));
    const Model model = parse_model(rest.substr(dash + 1));
    if (model == Model::Custom)
        throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
    return reference_scenario(model, test, full);
}

std::vector<std::string> builtin_scenario_names()
{
    std::vector<std::string> names;
    for (const char* test : {"impulsive", "uniform"})
        for (const auto& l : kLayouts)
            for (const char* suffix : {"", "-full"})
                names.push_back(std::string(test) + "-" + l.name + suffix);
    return names;
}

bool is_builtin_scenario(std::string_view name)
{
    try {
        builtin_scenario(name);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

Realization impulsive_init(const ScenarioConfig& config, const Partition& partition, Rng rng)
{
    if (config.test != TestKind::Impulsive)
        throw std::invalid_argument("impulsive_init called for a uniform test");
    Realization state(config, partition, std::move(rng));
    state.release(config.transmitter, config.molecules);
    return state;
}

Realization uniform_init(const ScenarioConfig& config, const Partition& partition, Rng rng)
{
    if (config.test != TestKind::Uniform)
        throw std::invalid_argument("uniform_init called for an impulsive test");
    Realization state(config, partition, std::move(rng));
    const auto points = place_uniform(config.environment.bounds(), static_cast<std::size_t>(config.molecules),
                                      state.rng());
    state.release_points(points);
    return state;
}

std::pair<double, double> events_per_molecule_time(const EventCounters& counters, std::int64_t molecules,
                                                   double final_time, std::size_t realizations)
{
    if (molecules <= 0 || !(final_time > 0.0) || realizations == 0)
        throw std::invalid_argument("events_per_molecule_time: N, t_f and realizations must be positive");
    const double scale = static_cast<double>(realizations) * static_cast<double>(molecules) * final_time;
    return {static_cast<double>(counters.micro) / scale, static_cast<double>(counters.meso) / scale};
}

} // namespace mcsim
