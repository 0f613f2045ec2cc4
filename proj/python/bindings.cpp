#include "mcsim/analytics.hpp"
#include "mcsim/batch.hpp"
#include "mcsim/geometry.hpp"
#include "mcsim/io.hpp"
#include "mcsim/meso_engine.hpp"
#include "mcsim/micro_engine.hpp"
#include "mcsim/scenarios.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

py::dict partition_summary(const mcsim::Partition& partition)
{
    py::dict regions;
    for (std::size_t r = 0; r < partition.regions().size(); ++r) {
        const auto& spec = partition.regions()[r];
        py::dict entry;
        entry["regime"] = mcsim::to_string(spec.regime);
        entry["subvolumes"] = partition.region_subvolume_count(static_cast<int>(r));
        if (spec.regime == mcsim::Regime::Microscopic)
            entry["interface_subvolumes"] = partition.interface_subvolumes(static_cast<int>(r)).size();
        regions[py::str(spec.id)] = entry;
    }
    py::dict out;
    out["regions"] = regions;
    out["total_subvolumes"] = partition.subvolume_count();
    out["links"] = partition.link_count();
    return out;
}

} // namespace

PYBIND11_MODULE(_mcsim, m)
{
    m.doc() = "Multi-scale stochastic diffusion simulator (micro, meso and hybrid models).";

    py::register_exception<mcsim::GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<mcsim::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("transition_rate", &mcsim::transition_rate, py::arg("h_i"), py::arg("h_j"), py::arg("h_o"),
          py::arg("diffusion"), "Per-molecule rate between adjacent squares with overlap h_o.");
    m.def("sample_event_time", &mcsim::sample_event_time, py::arg("t"), py::arg("total"), py::arg("u1"));
    m.def(
        "expected_rx",
        [](double t, double molecules, double distance, double diffusion, double rx_area) {
            return mcsim::expected_rx_impulse({molecules, rx_area, diffusion, distance}, t);
        },
        py::arg("t"), py::arg("molecules") = 1e4, py::arg("distance") = 7.0, py::arg("diffusion") = 1.0,
        py::arg("rx_area") = 1.0, "Expected RX count after an impulsive release in an unbounded plane.");
    m.def(
        "reflect",
        [](double x, double y, double width, double height) {
            const auto p = mcsim::reflect({x, y}, {width, height});
            return py::make_tuple(p.x, p.y);
        },
        py::arg("x"), py::arg("y"), py::arg("width"), py::arg("height"));

    m.def("scenarios", &mcsim::builtin_scenario_names, "Names of the built-in scenarios.");
    m.def(
        "validate",
        [](const std::string& scenario) {
            const auto config = mcsim::resolve_scenario(scenario);
            return partition_summary(mcsim::build_partition(config.environment, config.regions));
        },
        py::arg("scenario"), "Builds the partition of a scenario and summarizes it.");
    m.def(
        "run",
        [](const std::string& scenario, std::uint64_t seed, std::size_t realizations, std::size_t parallel,
           std::optional<double> final_time) {
            auto config = mcsim::resolve_scenario(scenario);
            if (final_time)
                config.final_time = *final_time;
            const auto partition = mcsim::build_partition(config.environment, config.regions);
            mcsim::BatchResult batch;
            {
                py::gil_scoped_release release;
                batch = mcsim::run_batch(config, partition, {seed, realizations, parallel});
            }
            const auto [micro, meso] = batch.event_rates(config.final_time);
            py::dict out;
            out["times"] = batch.mean.times;
            out["mean_rx"] = batch.mean.mean;
            out["stderr_rx"] = batch.mean.standard_error;
            out["micro_events"] = batch.counters.micro;
            out["meso_events"] = batch.counters.meso;
            out["micro_rate"] = micro;
            out["meso_rate"] = meso;
            out["conservation_failures"] = batch.conservation_failures;
            return out;
        },
        py::arg("scenario"), py::arg("seed") = 1, py::arg("realizations") = 1, py::arg("parallel") = 1,
        py::arg("final_time") = py::none(),
        "Runs a batch of realizations and returns the mean RX curve and event rates.");
}
