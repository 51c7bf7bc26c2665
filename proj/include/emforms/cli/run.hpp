#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "emforms/cli/config.hpp"
#include "emforms/junction.hpp"
#include "emforms/scenarios/cylinder.hpp"
#include "emforms/scenarios/solution.hpp"
#include "emforms/scenarios/sphere.hpp"

namespace emforms::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kConfigError = 2, kToleranceFailure = 3 };

inline json to_json(const Event& e) { return json::array({e[0], e[1], e[2], e[3]}); }

inline json to_json(const JumpReport& rep) {
    json j;
    j["interface"] = rep.interface;
    json samples = json::array();
    for (const auto& e : rep.samples) samples.push_back(to_json(e));
    j["samples"] = std::move(samples);
    json conds = json::object();
    for (const auto& c : rep.conditions) {
        json cj;
        cj["abs"] = c.abs;
        cj["rel"] = c.rel;
        cj["max_abs"] = c.max_abs;
        cj["max_rel"] = c.max_rel;
        conds[c.name] = std::move(cj);
    }
    j["conditions"] = std::move(conds);
    j["max_abs"] = rep.max_abs;
    j["max_rel"] = rep.max_rel;
    return j;
}

inline json to_json(const VerificationReport& rep) {
    json j;
    j["order"] = order_name(rep.order);
    j["tolerance"] = rep.tolerance;
    json regions = json::array();
    for (const auto& r : rep.regions) {
        regions.push_back(json{{"region", r.region},
                               {"samples", r.samples},
                               {"dF_abs", r.dF_abs},
                               {"dF_rel", r.dF_rel},
                               {"dstarG_abs", r.dstarG_abs},
                               {"dstarG_rel", r.dstarG_rel}});
    }
    j["maxwell"] = std::move(regions);
    json junctions = json::array();
    for (const auto& jr : rep.junctions) junctions.push_back(to_json(jr));
    j["junctions"] = std::move(junctions);
    j["max_maxwell_rel"] = rep.max_maxwell_rel;
    j["max_junction_rel"] = rep.max_junction_rel;
    if (rep.order == SolutionOrder::first_order) j["K"] = rep.K;
    j["passed"] = rep.passed;
    return j;
}

inline json to_json(const MatchingConstants& mc) {
    json j;
    if (mc.scenario == "cylinder") {
        j["C1"] = mc.C1;
        j["C2"] = mc.C2;
    } else {
        j["K0"] = mc.K0;
        j["K1"] = mc.K1;
        j["P0"] = mc.P0;
        j["P1"] = mc.P1;
    }
    j["fit_residual"] = mc.fit_residual;
    j["equations"] = mc.equations;
    return j;
}

/// Write via a temporary file in the same directory, then rename.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw Error("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

inline std::string csv_row(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += fmt17(values[i]);
    }
    s += '\n';
    return s;
}

/// Radial profile through the cylinder at θ = z = t = 0, sampled at the
/// midpoints of `points` equal cells on (0, 2 r2).
inline std::string cylinder_profile_csv(const CylinderScenario& sc, const FieldSolution& sol, int points) {
    if (points < 1) throw GeometryError("profile: need at least one radial point");
    const auto U = lab_frame(sol.chart);
    const auto in = decompose_all(sol.F_in, sol.G_in, U, sol.chart);
    const auto out = decompose_all(sol.F_out, sol.G_out, U, sol.chart);
    const auto src = cylinder_bound_sources_from_fields(sc, sol);
    std::string csv = "r,e_r,b_z,d_r,h_z,p_r,m_z,rho_bound,j_bound\n";
    const double r_max = 2.0 * sc.r2;
    for (int k = 0; k < points; ++k) {
        const double r = r_max * (k + 0.5) / points;
        const Event ev{{0.0, r, 0.0, 0.0}};
        const bool inside = r >= sc.r1 && r <= sc.r2;
        const auto& d = inside ? in : out;
        auto c1 = [&](const DifferentialForm& f, int i) { return f.component(MultiIndex{i})(ev); };
        std::vector<double> row{r, c1(d.e, 1), c1(d.b, 3), c1(d.d, 1), c1(d.h, 3), 0.0, 0.0, 0.0, 0.0};
        if (inside) {
            row[5] = c1(src.p, 1);
            row[6] = c1(src.m, 3);
            row[7] = src.charge.component(MultiIndex{1, 2, 3})(ev) / r;
            row[8] = -src.current.component(MultiIndex{1, 3})(ev);
        }
        csv += csv_row(row);
    }
    return csv;
}

/// Orthonormal lab-frame components on an (r, θ) grid in the φ = t = 0
/// half-plane: r at cell midpoints of (0, 2a), θ at cell midpoints of (0, π).
inline std::string sphere_profile_csv(const SphereScenario& sc, const FieldSolution& sol, int radial, int angular) {
    if (radial < 1 || angular < 1) throw GeometryError("profile: need at least one radial and one angular point");
    const auto U = lab_frame(sol.chart);
    const auto in = decompose_all(sol.F_in, sol.G_in, U, sol.chart);
    const auto out = decompose_all(sol.F_out, sol.G_out, U, sol.chart);
    std::string csv = "r,theta,e_r,e_theta,b_r,b_theta\n";
    for (int i = 0; i < radial; ++i) {
        const double r = 2.0 * sc.a * (i + 0.5) / radial;
        const auto& d = r <= sc.a ? in : out;
        for (int j = 0; j < angular; ++j) {
            const double th = std::numbers::pi * (j + 0.5) / angular;
            const Event ev{{0.0, r, th, 0.0}};
            const auto e = evaluate_orthonormal(d.e, sol.chart.metric, ev);
            const auto b = evaluate_orthonormal(d.b, sol.chart.metric, ev);
            csv += csv_row({r, th, e.at(MultiIndex{1}), e.at(MultiIndex{2}), b.at(MultiIndex{1}), b.at(MultiIndex{2})});
        }
    }
    return csv;
}

struct RunOptions {
    std::string config_path;
    bool verify_only = false;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
};

struct RunResult {
    int exit_code = kOk;
    std::vector<std::filesystem::path> written;
    std::string message;
};

inline json observables_json(const RunConfig& cfg, const FieldSolution& sol, const MatchingConstants& mc) {
    json j;
    j["scenario"] = cfg.kind();
    j["config"] = cfg.source;
    if (cfg.is_cylinder()) {
        const auto& sc = std::get<CylinderScenario>(cfg.scenario);
        const double exact = wilson_wilson_V12(sc, V12Mode::exact);
        const double leading = wilson_wilson_V12(sc, V12Mode::leading_order);
        j["exact_V12"] = exact;
        j["leading_V12"] = leading;
        j["V12_relative_difference"] = leading != 0.0 ? std::abs(exact - leading) / std::abs(leading) : 0.0;
        const auto cmp = compare_predictions(sc, 0.5 * (sc.r1 + sc.r2));
        j["comparator"] = json{{"radius_m", cmp.radius},
                               {"wilson_wilson_field_V_per_m", cmp.wilson_wilson},
                               {"pellegrini_swift_field_V_per_m", cmp.pellegrini_swift},
                               {"ratio", cmp.ratio},
                               {"expected_ratio", cmp.expected_ratio},
                               {"predictions_differ", cmp.distinct}};
        auto consts = to_json(mc);
        consts["C2_closed_form"] = cylinder::C2_closed_form(sc);
        j["matching_constants"] = std::move(consts);
    } else {
        const auto& sc = std::get<SphereScenario>(cfg.scenario);
        j["matching_constants"] = to_json(mc);
        const auto pub = sphere::reference_constants(sc);
        j["reference_constants"] = json{{"K0", pub.K0}, {"K1", pub.K1}, {"P0", pub.P0}, {"P1", pub.P1}};
        j["speed_ratio"] = sol.speed_ratio();
        j["warnings"] = sc.warnings();
    }
    return j;
}

inline int exit_code_for(const VerificationReport& rep) { return rep.passed ? kOk : kToleranceFailure; }

inline RunResult run(const RunOptions& opt, std::ostream& log) {
    RunResult res;
    RunConfig cfg;
    try {
        cfg = load_config(opt.config_path);
    } catch (const Error& e) {
        res.exit_code = kConfigError;
        res.message = e.what();
        log << "config error: " << e.what() << '\n';
        return res;
    }
    if (opt.samples) {
        if (*opt.samples < 1) {
            res.exit_code = kConfigError;
            res.message = "--samples must be positive";
            log << "config error: " << res.message << '\n';
            return res;
        }
        cfg.sampling.interface_samples = *opt.samples;
        cfg.sampling.region_samples = *opt.samples;
    }
    if (opt.seed) cfg.sampling.seed = *opt.seed;

    try {
        const auto is = static_cast<std::size_t>(cfg.sampling.interface_samples);
        const auto rs = static_cast<std::size_t>(cfg.sampling.region_samples);
        FieldSolution sol;
        MatchingConstants mc;
        if (cfg.is_cylinder()) {
            std::tie(sol, mc) = solve_cylinder(std::get<CylinderScenario>(cfg.scenario));
        } else {
            const auto& sc = std::get<SphereScenario>(cfg.scenario);
            for (const auto& w : sc.warnings()) log << "warning: " << w << '\n';
            std::tie(sol, mc) = solve_sphere(sc);
        }
        const auto rep = verify_solution(sol, rs, cfg.sampling.seed, is);
        json ver;
        ver["scenario"] = cfg.kind();
        ver["config"] = cfg.source;
        ver["seed"] = cfg.sampling.seed;
        auto body = to_json(rep);
        for (auto& [k, v] : body.items()) ver[k] = v;

        const std::filesystem::path dir(opt.out_dir);
        auto target = [&](const std::string& p) { return std::filesystem::path(p).is_absolute() ? std::filesystem::path(p) : dir / p; };

        std::vector<std::pair<std::filesystem::path, std::string>> files;
        if (!opt.verify_only) {
            std::string csv = cfg.is_cylinder()
                                  ? cylinder_profile_csv(std::get<CylinderScenario>(cfg.scenario), sol, cfg.sampling.radial_points)
                                  : sphere_profile_csv(std::get<SphereScenario>(cfg.scenario), sol, cfg.sampling.radial_points, cfg.sampling.angular_points);
            files.emplace_back(target(cfg.outputs.profile_csv), std::move(csv));
            files.emplace_back(target(cfg.outputs.observables_json), observables_json(cfg, sol, mc).dump(2) + "\n");
        }
        files.emplace_back(target(cfg.outputs.verification_json), ver.dump(2) + "\n");
        for (const auto& [path, content] : files) {
            write_atomically(path, content);
            res.written.push_back(path);
        }
        log << cfg.kind() << ": max Maxwell residual " << rep.max_maxwell_rel << ", max junction residual " << rep.max_junction_rel
            << ", tolerance " << rep.tolerance << (rep.passed ? " (pass)" : " (FAIL)") << '\n';
        res.exit_code = exit_code_for(rep);
    } catch (const Error& e) {
        res.exit_code = kRuntimeError;
        res.message = e.what();
        log << "error: " << e.what() << '\n';
    }
    return res;
}

}  // namespace emforms::cli
