#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace cli = vortex3::cli;

int main(int argc, char** argv)
{
    CLI::App app{"vortex3: three point vortices in the plane"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::size_t count = 20;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* simulate = app.add_subcommand("simulate", "integrate the configured formulations and write trajectories");
    simulate->add_option("--config", config_path, "JSON configuration")->required();
    simulate->add_option("--out", out_dir, "output directory");

    auto* classify = app.add_subcommand("classify", "report the collapse region, stratum and equilibria");
    classify->add_option("--config", config_path, "JSON configuration")->required();
    auto* classify_out = classify->add_option("--out", out_dir, "also write classify.json here");

    auto* sweep = app.add_subcommand("sweep", "classify every point of a parameter grid");
    sweep->add_option("--config", config_path, "JSON configuration")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("check", "randomized conservation and consistency harness");
    check->add_option("--seed", seed, "random seed");
    check->add_option("--count", count, "number of random cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::exit_ok : cli::exit_config_error;
    }

    try {
        if (check->parsed()) {
            return cli::cmd_check(seed, count, std::cout);
        }
        const cli::Config cfg = cli::load_config(config_path);
        if (simulate->parsed()) {
            return cli::cmd_simulate(cfg, out_dir, std::cerr);
        }
        if (classify->parsed()) {
            const std::filesystem::path out = out_dir;
            return cli::cmd_classify(cfg, classify_out->count() ? &out : nullptr, std::cout);
        }
        return cli::cmd_sweep(cfg, out_dir, jobs, std::cerr);
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_runtime_error;
    }
}
