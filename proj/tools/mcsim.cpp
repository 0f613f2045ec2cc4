// mcsim: multi-scale stochastic diffusion simulator command line.

#include "mcsim/batch.hpp"
#include "mcsim/io.hpp"
#include "mcsim/rng.hpp"
#include "mcsim/scenarios.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

fs::path output_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("MCSIM_OUT_DIR"); env && *env)
        return env;
    return "mcsim-out";
}

void prepare_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
}

int cmd_run(const std::string& scenario, std::optional<std::uint64_t> seed, std::optional<std::size_t> realizations,
            const std::string& out_flag, std::size_t parallel)
{
    mcsim::ScenarioConfig config = mcsim::resolve_scenario(scenario);
    if (seed)
        config.seed = *seed;
    if (realizations)
        config.realizations = *realizations;
    if (config.realizations == 0)
        throw mcsim::ConfigError("realizations must be at least 1");
    const auto partition = mcsim::build_partition(config.environment, config.regions);

    const fs::path dir = output_dir(out_flag);
    prepare_dir(dir);

    const auto batch = mcsim::run_batch(config, partition, {config.seed, config.realizations, parallel});
    const json events = mcsim::events_json(config, batch);
    mcsim::write_text(dir / "observations.csv", mcsim::observations_csv(batch.mean));
    mcsim::write_text(dir / "events.json", events.dump(2) + "\n");

    const json manifest{{"tool", "mcsim"},
                        {"version", kVersion},
                        {"command", "run"},
                        {"config", mcsim::config_to_json(config)},
                        {"seed", config.seed},
                        {"realizations", config.realizations},
                        {"parallel", parallel},
                        {"rng", mcsim::Rng::kScheme},
                        {"outputs", {{"observations", "observations.csv"}, {"events", "events.json"}}},
                        {"summary",
                         {{"micro_events", batch.counters.micro},
                          {"meso_events", batch.counters.meso},
                          {"micro_per_molecule_time", events["micro_per_molecule_time"]},
                          {"meso_per_molecule_time", events["meso_per_molecule_time"]},
                          {"conservation_failures", batch.conservation_failures},
                          {"wall_seconds", batch.wall_seconds}}}};
    mcsim::write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << config.name << ": " << config.realizations << " realizations in " << batch.wall_seconds << " s\n"
              << "  micro events/molecule/time " << events["micro_per_molecule_time"].get<double>() << "\n"
              << "  meso events/molecule/time  " << events["meso_per_molecule_time"].get<double>() << "\n"
              << "  outputs in " << dir.string() << "\n";
    if (batch.conservation_failures > 0) {
        std::cerr << "error: molecule conservation violated at " << batch.conservation_failures << " observations\n";
        return 1;
    }
    return 0;
}

int cmd_analytic(const mcsim::AnalyticParams& params, double t_max, double t_ob, const std::string& out_flag)
{
    const std::string csv = mcsim::analytic_csv(params, t_max, t_ob);
    const fs::path dir = output_dir(out_flag);
    prepare_dir(dir);
    mcsim::write_text(dir / "analytic.csv", csv);
    std::cout << "wrote " << (dir / "analytic.csv").string() << "\n";
    return 0;
}

int cmd_validate(const std::string& scenario)
{
    const mcsim::ScenarioConfig config = mcsim::resolve_scenario(scenario);
    const auto partition = mcsim::build_partition(config.environment, config.regions);
    // Probes validate that TX and RX align with the mesh.
    mcsim::Probe tx(partition, config.transmitter);
    mcsim::Probe rx(partition, config.receiver);
    std::cout << "scenario " << config.name << "\n" << mcsim::partition_report(partition);
    std::cout << "transmitter subvolumes " << tx.subvolumes().size() << (tx.has_micro_part() ? " (micro)" : "")
              << "\nreceiver subvolumes " << rx.subvolumes().size() << (rx.has_micro_part() ? " (micro)" : "") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-scale stochastic diffusion simulator for molecular communication"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string run_scenario;
    std::optional<std::uint64_t> run_seed;
    std::optional<std::size_t> run_realizations;
    std::string run_out;
    std::size_t run_parallel = 1;
    auto* run = app.add_subcommand("run", "Run a batch of realizations and write observations, events and manifest");
    run->add_option("scenario", run_scenario, "Built-in scenario name or JSON config path")->required();
    run->add_option("--seed", run_seed, "Master seed");
    run->add_option("--realizations", run_realizations, "Number of realizations");
    run->add_option("--out", run_out, "Output directory (default $MCSIM_OUT_DIR or ./mcsim-out)");
    run->add_option("--parallel", run_parallel, "Worker threads")->check(CLI::PositiveNumber);

    mcsim::AnalyticParams params;
    double t_max = 100.0;
    double t_ob = 1.0;
    std::string analytic_out;
    auto* analytic = app.add_subcommand("analytic", "Write the unbounded-plane impulse response curve");
    analytic->add_option("--N", params.molecules, "Molecules released")->capture_default_str();
    analytic->add_option("--d", params.distance, "TX-RX center distance")->capture_default_str();
    analytic->add_option("--D", params.diffusion, "Diffusion coefficient")->capture_default_str();
    analytic->add_option("--rx-area", params.rx_area, "Receiver area")->capture_default_str();
    analytic->add_option("--t-max", t_max, "Last time on the grid")->capture_default_str();
    analytic->add_option("--t-ob", t_ob, "Grid spacing")->capture_default_str();
    analytic->add_option("--out", analytic_out, "Output directory");

    std::string validate_scenario;
    auto* validate = app.add_subcommand("validate", "Build the partition and report subvolume counts");
    validate->add_option("scenario", validate_scenario, "Built-in scenario name or JSON config path")->required();

    auto* list = app.add_subcommand("list", "List built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(run_scenario, run_seed, run_realizations, run_out, run_parallel);
        if (*analytic)
            return cmd_analytic(params, t_max, t_ob, analytic_out);
        if (*validate)
            return cmd_validate(validate_scenario);
        if (*list) {
            for (const auto& name : mcsim::builtin_scenario_names())
                std::cout << name << "\n";
            return 0;
        }
    } catch (const mcsim::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 2;
    } catch (const mcsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
