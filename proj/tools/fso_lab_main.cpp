#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fso/config.hpp"
#include "fso/errors.hpp"
#include "fso/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fso-lab: configuration-driven experiments on fractional Sobolev-Orlicz operators"};

    std::string config_path;
    std::string out_dir;
    std::string baselines_path;
    std::uint64_t seed = 0;
    bool have_seed = false;
    std::size_t grid_n = 0;
    bool capture = false;
    bool quiet = false;

    app.add_option("--config", config_path, "experiment configuration file")->required();
    app.add_option("--out", out_dir, "output directory (default: 'out')");
    auto* seed_opt = app.add_option("--seed", seed, "override the suite seed");
    app.add_option("--grid-n", grid_n, "override the grid resolution N");
    app.add_option("--baselines", baselines_path, "baselines file (default: <out>/baselines.json)");
    app.add_flag("--capture-baselines", capture, "record suite maxima instead of asserting them");
    app.add_flag("--quiet", quiet, "suppress the run summary");

    CLI11_PARSE(app, argc, argv);
    have_seed = seed_opt->count() > 0;

    try {
        fso::RunConfig cfg = fso::RunConfig::from_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!baselines_path.empty()) cfg.baselines_path = baselines_path;
        if (have_seed) cfg.seed = seed;
        if (grid_n != 0) {
            cfg.n = grid_n;
            cfg.validate();
        }
        cfg.capture_baselines = capture;
        cfg.quiet = quiet;

        const auto result = fso::experiments::run(cfg);
        if (!quiet || result.status != 0) std::cout << result.summary;
        return result.status;
    } catch (const fso::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
