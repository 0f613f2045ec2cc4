#include "mcsim/io.hpp"

#include "mcsim/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mcsim {

using nlohmann::json;

namespace {

Rect rect_from_json(const json& j, const char* key)
{
    if (!j.is_array() || j.size() != 4)
        throw ConfigError(std::string("'") + key + "' must be an array [x0, y0, x1, y1]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

json rect_to_json(const Rect& r) { return json::array({r.x0, r.y0, r.x1, r.y1}); }

RegionSpec region_from_json(const json& j)
{
    static const std::set<std::string> known{"id", "outer", "inner", "regime", "h"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw ConfigError("unknown region key '" + key + "'");
    RegionSpec r;
    r.id = j.at("id").get<std::string>();
    r.outer = rect_from_json(j.at("outer"), "outer");
    if (j.contains("inner"))
        r.inner = rect_from_json(j.at("inner"), "inner");
    const auto regime = j.at("regime").get<std::string>();
    if (regime == "micro")
        r.regime = Regime::Microscopic;
    else if (regime == "meso")
        r.regime = Regime::Mesoscopic;
    else
        throw ConfigError("region '" + r.id + "': regime must be 'micro' or 'meso'");
    if (r.regime == Regime::Mesoscopic)
        r.subvolume_width = j.at("h").get<double>();
    return r;
}

} // namespace

std::string format_real(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

ScenarioConfig config_from_json(const json& doc)
{
    static const std::set<std::string> known{"scenario",   "name",           "model",        "test",
                                             "environment", "regions",       "diffusion",    "micro_step",
                                             "transmitter", "receiver",      "molecules",    "final_time",
                                             "observation_interval", "record_at_final", "rebuild_interval",
                                             "releases",    "realizations",  "seed"};
    if (!doc.is_object())
        throw ConfigError("scenario configuration must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (!known.count(key))
            throw ConfigError("unknown configuration key '" + key + "'");

    try {
        ScenarioConfig c;
        if (doc.contains("scenario")) {
            c = builtin_scenario(doc.at("scenario").get<std::string>());
        } else {
            if (!doc.contains("environment") || !doc.contains("regions"))
                throw ConfigError("a configuration without 'scenario' needs 'environment' and 'regions'");
            c.name = "custom";
        }
        if (doc.contains("name"))
            c.name = doc.at("name").get<std::string>();
        if (doc.contains("model"))
            c.model = parse_model(doc.at("model").get<std::string>());
        if (doc.contains("test"))
            c.test = parse_test(doc.at("test").get<std::string>());
        if (doc.contains("environment")) {
            const auto& env = doc.at("environment");
            c.environment = {env.at("width").get<double>(), env.at("height").get<double>()};
        }
        if (doc.contains("regions")) {
            c.regions.clear();
            for (const auto& r : doc.at("regions"))
                c.regions.push_back(region_from_json(r));
            if (!doc.contains("model"))
                c.model = Model::Custom;
        }
        if (doc.contains("diffusion"))
            c.diffusion = doc.at("diffusion").get<double>();
        if (doc.contains("micro_step"))
            c.micro_step = doc.at("micro_step").get<double>();
        if (doc.contains("transmitter"))
            c.transmitter = rect_from_json(doc.at("transmitter"), "transmitter");
        if (doc.contains("receiver"))
            c.receiver = rect_from_json(doc.at("receiver"), "receiver");
        if (doc.contains("molecules"))
            c.molecules = doc.at("molecules").get<std::int64_t>();
        if (doc.contains("final_time"))
            c.final_time = doc.at("final_time").get<double>();
        if (doc.contains("observation_interval"))
            c.observation_interval = doc.at("observation_interval").get<double>();
        if (doc.contains("record_at_final"))
            c.record_at_final = doc.at("record_at_final").get<bool>();
        if (doc.contains("rebuild_interval"))
            c.rebuild_interval = doc.at("rebuild_interval").get<std::uint64_t>();
        if (doc.contains("releases")) {
            c.extra_releases.clear();
            for (const auto& r : doc.at("releases"))
                c.extra_releases.push_back({r.at("time").get<double>(), r.at("molecules").get<std::int64_t>()});
        }
        if (doc.contains("realizations"))
            c.realizations = doc.at("realizations").get<std::size_t>();
        if (doc.contains("seed"))
            c.seed = doc.at("seed").get<std::uint64_t>();

        if (c.molecules < 0)
            throw ConfigError("'molecules' must be non-negative");
        if (!(c.diffusion >= 0.0) || !(c.micro_step > 0.0) || !(c.final_time > 0.0) ||
            !(c.observation_interval > 0.0))
            throw ConfigError("diffusion must be >= 0; micro_step, final_time and observation_interval > 0");
        if (c.rebuild_interval == 0)
            throw ConfigError("'rebuild_interval' must be positive");
        for (std::size_t i = 1; i < c.extra_releases.size(); ++i)
            if (c.extra_releases[i].time < c.extra_releases[i - 1].time)
                throw ConfigError("'releases' must be sorted by time");
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

json config_to_json(const ScenarioConfig& c)
{
    json regions = json::array();
    for (const auto& r : c.regions) {
        json j{{"id", r.id}, {"outer", rect_to_json(r.outer)}, {"regime", to_string(r.regime)}};
        if (r.inner)
            j["inner"] = rect_to_json(*r.inner);
        if (r.regime == Regime::Mesoscopic)
            j["h"] = r.subvolume_width;
        regions.push_back(j);
    }
    json releases = json::array();
    for (const auto& r : c.extra_releases)
        releases.push_back({{"time", r.time}, {"molecules", r.molecules}});
    std::string model = to_string(c.model);
    for (auto& ch : model)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return json{{"name", c.name},
                {"model", model},
                {"test", to_string(c.test)},
                {"environment", {{"width", c.environment.width}, {"height", c.environment.height}}},
                {"regions", regions},
                {"diffusion", c.diffusion},
                {"micro_step", c.micro_step},
                {"transmitter", rect_to_json(c.transmitter)},
                {"receiver", rect_to_json(c.receiver)},
                {"molecules", c.molecules},
                {"final_time", c.final_time},
                {"observation_interval", c.observation_interval},
                {"record_at_final", c.record_at_final},
                {"rebuild_interval", c.rebuild_interval},
                {"releases", releases},
                {"realizations", c.realizations},
                {"seed", c.seed}};
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read configuration file '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

ScenarioConfig resolve_scenario(std::string_view name_or_path)
{
    if (is_builtin_scenario(name_or_path))
        return builtin_scenario(name_or_path);
    const std::filesystem::path path{std::string(name_or_path)};
    if (!std::filesystem::exists(path))
        throw ConfigError("'" + std::string(name_or_path) + "' is neither a built-in scenario nor a file");
    return load_config(path);
}

std::string observations_csv(const AggregateSeries& mean)
{
    std::string out = "time,mean_rx,stderr_rx,n_realizations\n";
    const std::string n = std::to_string(mean.realizations);
    for (std::size_t k = 0; k < mean.times.size(); ++k) {
        out += format_real(mean.times[k]);
        out += ',';
        out += format_real(mean.mean[k]);
        out += ',';
        out += format_real(mean.standard_error[k]);
        out += ',';
        out += n;
        out += '\n';
    }
    return out;
}

std::string analytic_csv(const AnalyticParams& params, double t_max, double t_ob)
{
    if (params.molecules < 0.0 || !(params.rx_area > 0.0) || !(params.diffusion > 0.0) || !(params.distance > 0.0) ||
        !(t_max > 0.0) || !(t_ob > 0.0))
        throw ConfigError("analytic: N must be >= 0 and D, d, rx-area, t-max, t-ob must be positive");
    const auto n = static_cast<std::size_t>(std::floor(t_max / t_ob + 1e-9));
    std::string out = "time,expected_rx\n";
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = static_cast<double>(k) * t_ob;
        out += format_real(t);
        out += ',';
        out += format_real(expected_rx_impulse(params, t));
        out += '\n';
    }
    return out;
}

json events_json(const ScenarioConfig& config, const BatchResult& batch)
{
    const auto [micro_rate, meso_rate] = batch.event_rates(config.final_time);
    return json{{"scenario", config.name},
                {"model", to_string(config.model)},
                {"test", to_string(config.test)},
                {"realizations", batch.realizations},
                {"molecules", batch.released},
                {"final_time", config.final_time},
                {"micro_events", batch.counters.micro},
                {"meso_events", batch.counters.meso},
                {"micro_per_molecule_time", micro_rate},
                {"meso_per_molecule_time", meso_rate},
                {"conservation_failures", batch.conservation_failures}};
}

std::string partition_report(const Partition& partition)
{
    std::ostringstream os;
    os << "environment " << partition.environment().width << " x " << partition.environment().height << "\n";
    for (std::size_t r = 0; r < partition.regions().size(); ++r) {
        const auto& spec = partition.regions()[r];
        os << "region " << spec.id << ": " << to_string(spec.regime);
        if (spec.regime == Regime::Mesoscopic)
            os << " h=" << spec.subvolume_width << " subvolumes=" << partition.region_subvolume_count(static_cast<int>(r));
        os << " area=" << spec.area() << "\n";
        if (spec.regime == Regime::Microscopic) {
            const auto itf = partition.interface_subvolumes(static_cast<int>(r));
            os << "  interface subvolumes: " << itf.size();
            if (!itf.empty())
                os << " (width " << partition.subvolume(itf.front().subvolume).width << ")";
            os << "\n";
        }
    }
    os << "links " << partition.link_count() << "\n";
    os << "total subvolumes " << partition.subvolume_count() << "\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace mcsim
