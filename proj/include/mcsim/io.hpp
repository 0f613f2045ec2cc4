#pragma once

#include "mcsim/analytics.hpp"
#include "mcsim/batch.hpp"
#include "mcsim/config.hpp"
#include "mcsim/geometry.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace mcsim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig load_config(const std::filesystem::path& path);
/// A built-in scenario name or the path of a JSON scenario file.
ScenarioConfig resolve_scenario(std::string_view name_or_path);

std::string observations_csv(const AggregateSeries& mean);
std::string analytic_csv(const AnalyticParams& params, double t_max, double t_ob);
nlohmann::json events_json(const ScenarioConfig& config, const BatchResult& batch);
/// Human-readable partition summary: per-region counts, interface inventory, total.
std::string partition_report(const Partition& partition);

void write_text(const std::filesystem::path& path, std::string_view text);

} // namespace mcsim
