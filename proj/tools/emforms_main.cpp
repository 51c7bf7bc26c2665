#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "emforms/cli/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Moving-media electromagnetics with differential forms"};
    app.require_subcommand(1);
    auto* run = app.add_subcommand("run", "solve, verify and write reports for a scenario config");

    emforms::cli::RunOptions opt;
    int samples = 0;
    std::uint64_t seed = 0;
    run->add_option("config", opt.config_path, "scenario config (JSON)")->required();
    run->add_flag("--verify-only", opt.verify_only, "write only the verification report");
    auto* samples_opt = run->add_option("--samples", samples, "interface and region sample count");
    auto* seed_opt = run->add_option("--seed", seed, "sampling seed");
    run->add_option("--out-dir", opt.out_dir, "directory for output files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : emforms::cli::kConfigError;
    }
    if (*samples_opt) opt.samples = samples;
    if (*seed_opt) opt.seed = seed;
    return emforms::cli::run(opt, std::cerr).exit_code;
}
