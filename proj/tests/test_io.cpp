#include "mcsim/io.hpp"
#include "mcsim/scenarios.hpp"

#include "doctest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

using namespace mcsim;
using nlohmann::json;

namespace {

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("shortest round-trip formatting")
{
    for (double v : {0.0, 1.0, 0.1, 23.897, 1e-300, 12345678.9, 1.0 / 3.0}) {
        const std::string text = format_real(v);
        double back = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(back == v);
    }
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(100.0) == "100");
}

TEST_CASE("configuration round trip")
{
    auto c = reference_scenario(Model::HybMs, TestKind::Uniform);
    c.extra_releases = {{3.0, 10}, {5.0, 20}};
    c.seed = 77;
    const auto back = config_from_json(config_to_json(c));
    CHECK(back.name == c.name);
    CHECK(back.model == c.model);
    CHECK(back.test == c.test);
    CHECK(back.molecules == c.molecules);
    CHECK(back.final_time == c.final_time);
    CHECK(back.seed == 77);
    REQUIRE(back.regions.size() == 3);
    CHECK(back.regions[0].regime == Regime::Microscopic);
    CHECK(back.regions[2].subvolume_width == 2.0);
    CHECK(back.regions[1].inner.has_value());
    REQUIRE(back.extra_releases.size() == 2);
    CHECK(back.extra_releases[1].molecules == 20);
    CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("configuration overrides on a built-in base")
{
    const auto c = config_from_json(json::parse(R"({"scenario": "impulsive-meso", "molecules": 50,
                                                     "final_time": 5, "seed": 3})"));
    CHECK(c.model == Model::Meso);
    CHECK(c.molecules == 50);
    CHECK(c.final_time == 5.0);
    CHECK(c.regions.size() == 3);
}

TEST_CASE("configuration errors")
{
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"scenario": "impulsive-meso", "molecule": 5})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"scenario": "impulsive-nothing"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"molecules": 5})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"scenario": "impulsive-meso", "final_time": -1})")),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"scenario": "impulsive-meso", "diffusion": "fast"})")),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"([1, 2])")), ConfigError);
    CHECK_THROWS_AS(
        config_from_json(json::parse(
            R"({"environment": {"width": 2, "height": 2},
                "regions": [{"id": "A", "outer": [0, 0, 2, 2], "regime": "gas", "h": 1}]})")),
        ConfigError);
    CHECK_THROWS_AS(resolve_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST_CASE("analytic table")
{
    const AnalyticParams p;
    const std::string csv = analytic_csv(p, 100.0, 1.0);
    CHECK(csv.rfind("time,expected_rx\n", 0) == 0);
    CHECK(line_count(csv) == 101);
    CHECK(line_count(analytic_csv(p, 10.0, 0.3)) == 1 + 33);
    CHECK(csv.find("\n12,") != std::string::npos);

    const std::string none = analytic_csv({0.0, 1.0, 1.0, 7.0}, 3.0, 1.0);
    std::istringstream in(none);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.substr(line.find(',') + 1) == "0");
        ++rows;
    }
    CHECK(rows == 3);
    CHECK_THROWS_AS(analytic_csv({-1.0, 1.0, 1.0, 7.0}, 3.0, 1.0), ConfigError);
    CHECK_THROWS_AS(analytic_csv(p, 3.0, 0.0), ConfigError);
}

TEST_CASE("observation table")
{
    AggregateSeries s;
    s.times = {1.0, 2.0};
    s.mean = {0.5, 1.25};
    s.standard_error = {0.0, 0.125};
    s.realizations = 4;
    CHECK(observations_csv(s) == "time,mean_rx,stderr_rx,n_realizations\n1,0.5,0,4\n2,1.25,0.125,4\n");
}

TEST_CASE("partition report")
{
    const auto hyb = reference_scenario(Model::Hyb, TestKind::Impulsive);
    const auto report = partition_report(build_partition(hyb.environment, hyb.regions));
    CHECK(report.find("total subvolumes 1680") != std::string::npos);
    CHECK(report.find("interface subvolumes: 64") != std::string::npos);
}
