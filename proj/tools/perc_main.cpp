#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "perc/experiment.hpp"
#include "perc/io_util.hpp"

using namespace perc;

int main(int argc, char** argv) {
    CLI::App app{"continuum percolation experiments on poisson / ginibre / gaf points"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed_override = 0;
    long replicas_override = 0;
    long threads_override = -1;
    bool have_seed = false;

    const char* kinds[] = {"sample", "percolate",      "rc",            "hole", "overcrowd",
                           "unique", "fieldmin",       "verify-discr1", "verify-discr2"};
    for (const char* kind : kinds) {
        auto* sub = app.add_subcommand(kind, std::string("run a ") + kind + " experiment");
        sub->add_option("--config", config_path, "experiment config JSON")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed_override, "master seed (overrides config)")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_option("--replicas", replicas_override, "n_samples (overrides config)");
        sub->add_option("--threads", threads_override, "worker threads (overrides config)");
    }

    CLI11_PARSE(app, argc, argv);
    std::string sub_name = app.get_subcommands().front()->get_name();

    std::string raw;
    try {
        raw = read_file(config_path);
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", {{"kind", "io"}, {"message", e.what()}}}};
        std::printf("%s\n", err.dump(2).c_str());
        return 2;
    }

    auto validated = validate_config(raw);
    if (std::holds_alternative<ConfigErrors>(validated)) {
        nlohmann::json err = {{"error",
                               {{"kind", "validation"},
                                {"message", "config failed validation"},
                                {"details", std::get<ConfigErrors>(validated).errors}}}};
        std::printf("%s\n", err.dump(2).c_str());
        return 2;
    }
    ExperimentConfig cfg = std::get<ExperimentConfig>(validated);

    if (to_string(cfg.kind) != sub_name) {
        nlohmann::json err = {{"error",
                               {{"kind", "validation"},
                                {"message", "config experiment `" + to_string(cfg.kind) +
                                                "` does not match subcommand `" + sub_name +
                                                "`"}}}};
        std::printf("%s\n", err.dump(2).c_str());
        return 2;
    }

    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (have_seed) cfg.seed = seed_override;
    if (replicas_override > 0) cfg.n_samples = replicas_override;
    if (threads_override >= 0) cfg.threads = static_cast<unsigned>(threads_override);

    ExperimentResult result = run_experiment(cfg);
    if (result.exit_code != 0) {
        std::printf("%s\n", result.error_json.c_str());
    } else {
        std::printf("{\"ok\": true, \"results\": \"%s\"}\n", result.results_path.c_str());
    }
    return result.exit_code;
}
