// Command-line sweep runner: evaluates analytic and simulated BER over the
// experiment grid of a config file and writes a CSV (plus an optional gnuplot
// script).
//
// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 I/O error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cogber/quadrature.hpp"
#include "cogber/sweep.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Underlay multi-hop cognitive-radio BER evaluator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string gnuplot_path;
    std::optional<std::uint64_t> seed;
    bool analytic_only = false;
    bool sim_only = false;

    CLI::App* run = app.add_subcommand("run", "Run a sweep from a config file");
    run->add_option("--config", config_path, "Sweep config file")->required();
    run->add_option("--output", output_path, "CSV output path (overrides config)");
    run->add_option("--seed", seed, "Simulation seed (overrides config)");
    run->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script");
    CLI::Option* ao =
        run->add_flag("--analytic-only", analytic_only, "Skip the simulator");
    run->add_flag("--sim-only", sim_only, "Skip the analytic evaluation")
        ->excludes(ao);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cogber::SweepConfig cfg;
    try {
        cfg = cogber::load_config(config_path);
        if (!output_path.empty()) {
            cfg.output_path = output_path;
        }
        if (seed) {
            cfg.seed = *seed;
        }
    } catch (const cogber::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    cogber::SweepMode mode = cogber::SweepMode::Both;
    if (analytic_only) {
        mode = cogber::SweepMode::AnalyticOnly;
    } else if (sim_only) {
        mode = cogber::SweepMode::SimOnly;
    }

    try {
        const auto rows = cogber::run_sweep(cfg, mode);
        cogber::write_csv(rows, cfg.output_path);
        if (!gnuplot_path.empty()) {
            cogber::write_gnuplot_script(cfg, cfg.output_path, gnuplot_path);
        }
        std::size_t failed = 0;
        for (const auto& r : rows) {
            if (r.status.rfind("error", 0) == 0) {
                ++failed;
            }
        }
        std::cout << rows.size() << " grid points -> " << cfg.output_path;
        if (failed > 0) {
            std::cout << " (" << failed << " failed, see status column)";
        }
        std::cout << "\n";
        return 0;
    } catch (const cogber::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
