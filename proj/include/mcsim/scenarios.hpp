#pragma once

#include "mcsim/config.hpp"
#include "mcsim/hybrid_scheduler.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcsim {

// Reference environment: 48 x 40, an inner 20 x 12 region surrounded by a
// width-6 ring and a width-8 ring that reaches the reflective boundary.
inline constexpr double kEnvWidth = 48.0;
inline constexpr double kEnvHeight = 40.0;
inline constexpr Rect kInnerRegion{14.0, 14.0, 34.0, 26.0};
inline constexpr Rect kMiddleRegion{8.0, 8.0, 40.0, 32.0};
// Unit squares with centers 7 apart, aligned to the unit mesh of the inner region.
inline constexpr Rect kTransmitter{18.0, 19.0, 19.0, 20.0};
inline constexpr Rect kReceiver{25.0, 19.0, 26.0, 20.0};
inline constexpr double kTxRxDistance = 7.0;

inline constexpr std::size_t kDeskImpulsiveRealizations = 200;
inline constexpr std::size_t kDeskUniformRealizations = 100;
inline constexpr std::size_t kFullImpulsiveRealizations = 10'000;
inline constexpr std::size_t kFullUniformRealizations = 1'000;

/// Region layout (regimes and subvolume widths) for one model.
std::vector<RegionSpec> reference_regions(Model model);

/// Reference experiment for a model/test pair at desk or full scale.
ScenarioConfig reference_scenario(Model model, TestKind test, bool full_scale = false);

/// Built-in names: "<test>-<model>[-full]", e.g. "impulsive-meso-ms",
/// "uniform-hyb-full".
ScenarioConfig builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(std::string_view name);

Model parse_model(std::string_view text);
TestKind parse_test(std::string_view text);

/// Releases N molecules at the transmitter at t = 0.
Realization impulsive_init(const ScenarioConfig& config, const Partition& partition, Rng rng);
/// Scatters N molecules uniformly over the whole environment at t = 0.
Realization uniform_init(const ScenarioConfig& config, const Partition& partition, Rng rng);

/// Events per molecule per unit time, averaged over realizations:
/// {micro, meso} = counters / (realizations * N * t_f).
std::pair<double, double> events_per_molecule_time(const EventCounters& counters, std::int64_t molecules,
                                                   double final_time, std::size_t realizations = 1);

} // namespace mcsim
