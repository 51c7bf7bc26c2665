#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "emforms/errors.hpp"
#include "emforms/scenarios/cylinder.hpp"
#include "emforms/scenarios/sphere.hpp"

namespace emforms::cli {

using json = nlohmann::ordered_json;

struct Sampling {
    int radial_points = 64;
    int angular_points = 16;
    std::uint64_t seed = 1;
    int interface_samples = 64;
    int region_samples = 200;
};

struct Outputs {
    std::string profile_csv = "profile.csv";
    std::string observables_json = "observables.json";
    std::string verification_json = "verification.json";
};

struct RunConfig {
    std::variant<CylinderScenario, SphereScenario> scenario;
    Sampling sampling;
    Outputs outputs;
    /// The config document exactly as read.
    json source;

    bool is_cylinder() const { return std::holds_alternative<CylinderScenario>(scenario); }
    std::string kind() const { return is_cylinder() ? "cylinder" : "sphere"; }
};

namespace detail {

inline void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.contains(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

inline const json& required(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    return obj.at(key);
}

inline double number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = required(obj, key, where);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key + " must be finite");
    return x;
}

inline int positive_int(const json& obj, const std::string& key, const std::string& where, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1000000)
        throw ConfigError(where + "." + key + " must be a positive integer");
    return v.get<int>();
}

inline std::string path_string(const json& obj, const std::string& key, const std::string& where, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string() || v.get<std::string>().empty()) throw ConfigError(where + "." + key + " must be a non-empty string");
    return v.get<std::string>();
}

}  // namespace detail

inline RunConfig parse_config(const json& doc) {
    using namespace detail;
    only_keys(doc, {"scenario", "chart", "geometry", "omega_rad_per_s", "applied_field", "material", "sampling", "outputs"}, "config");
    const auto& kind = required(doc, "scenario", "config");
    if (!kind.is_string()) throw ConfigError("config.scenario must be a string");
    const std::string k = kind.get<std::string>();
    if (k != "cylinder" && k != "sphere") throw ConfigError("config.scenario must be 'cylinder' or 'sphere'");
    if (doc.contains("chart")) {
        const auto& ch = doc.at("chart");
        if (!ch.is_string()) throw ConfigError("config.chart must be a string");
        const auto expected = k == "cylinder" ? ChartKind::cylindrical : ChartKind::spherical;
        if (chart_from_name(ch.get<std::string>()) != expected) throw ConfigError("config.chart does not match the scenario");
    }

    MaterialParams mat;
    const auto& m = required(doc, "material", "config");
    only_keys(m, {"eps_r", "mu_r"}, "material");
    mat.eps_r = number(m, "eps_r", "material");
    mat.mu_r = number(m, "mu_r", "material");
    const double omega = number(doc, "omega_rad_per_s", "config");

    RunConfig cfg;
    cfg.source = doc;
    const auto& geo = required(doc, "geometry", "config");
    const auto& field = required(doc, "applied_field", "config");
    if (k == "cylinder") {
        only_keys(geo, {"r1_m", "r2_m"}, "geometry");
        only_keys(field, {"B0_T"}, "applied_field");
        cfg.scenario = CylinderScenario{number(geo, "r1_m", "geometry"), number(geo, "r2_m", "geometry"), omega, number(field, "B0_T", "applied_field"), mat};
    } else {
        only_keys(geo, {"a_m"}, "geometry");
        only_keys(field, {"E0_V_per_m"}, "applied_field");
        cfg.scenario = SphereScenario{number(geo, "a_m", "geometry"), omega, number(field, "E0_V_per_m", "applied_field"), mat};
    }

    if (doc.contains("sampling")) {
        const auto& s = doc.at("sampling");
        only_keys(s, {"radial_points", "angular_points", "seed", "interface_samples", "region_samples"}, "sampling");
        cfg.sampling.radial_points = positive_int(s, "radial_points", "sampling", cfg.sampling.radial_points);
        cfg.sampling.angular_points = positive_int(s, "angular_points", "sampling", cfg.sampling.angular_points);
        cfg.sampling.interface_samples = positive_int(s, "interface_samples", "sampling", cfg.sampling.interface_samples);
        cfg.sampling.region_samples = positive_int(s, "region_samples", "sampling", cfg.sampling.region_samples);
        if (s.contains("seed")) {
            if (!s.at("seed").is_number_unsigned()) throw ConfigError("sampling.seed must be a non-negative integer");
            cfg.sampling.seed = s.at("seed").get<std::uint64_t>();
        }
    }
    if (doc.contains("outputs")) {
        const auto& o = doc.at("outputs");
        only_keys(o, {"profile_csv", "observables_json", "verification_json"}, "outputs");
        cfg.outputs.profile_csv = path_string(o, "profile_csv", "outputs", cfg.outputs.profile_csv);
        cfg.outputs.observables_json = path_string(o, "observables_json", "outputs", cfg.outputs.observables_json);
        cfg.outputs.verification_json = path_string(o, "verification_json", "outputs", cfg.outputs.verification_json);
    }

    try {
        std::visit([](const auto& sc) { sc.validate(); }, cfg.scenario);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

}  // namespace emforms::cli
