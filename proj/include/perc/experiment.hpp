#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "perc/estimators.hpp"

namespace perc {

inline constexpr const char* kVersion = "perc 0.1.0";

enum class ExperimentKind {
    sample,
    percolate,
    rc,
    hole,
    overcrowd,
    unique,
    fieldmin,
    verify_discr1,
    verify_discr2,
};

std::string to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::sample;
    ProcessKind process = ProcessKind::poisson;
    double intensity = 1.0;
    std::uint64_t seed = 0;
    long n_samples = 1;
    double buffer = 5.0;
    unsigned threads = 0; // 0 = hardware concurrency
    std::string out_dir = ".";

    // kind-specific
    double half_width = 0.0;
    std::vector<double> r_values;       // percolate
    double L = 0.0;                     // percolate scale
    std::vector<double> L_schedule;     // rc
    long n_per_step = 0;                // rc
    double tol = 0.0;                   // rc
    RegionSpec region;                  // hole / overcrowd
    std::vector<double> region_scales;  // chain lengths or disk radii to sweep
    long k = 0;                         // overcrowd / verify-discr2
    double r = 0.0;                     // unique / verify-*
    std::vector<double> L_list;         // unique
    double nu = 0.0, R = 0.0;           // fieldmin
    long lattice_L = 0;                 // verify-*
    double theta = 0.0;                 // verify-discr2

    SamplerSpec sampler_spec() const;
    std::string resolved_json() const; // full echo, defaults filled in
};

// Full structural + range validation; unknown keys rejected. Returns the
// config or a list of per-field errors.
struct ConfigErrors {
    std::vector<std::string> errors;
};
std::variant<ExperimentConfig, ConfigErrors> validate_config(const std::string& raw_json);

struct ExperimentResult {
    int exit_code = 0;
    std::string results_path;
    std::string error_json; // non-empty on failure
};

// Runs the experiment, writes results.json + series CSVs into out_dir.
// Output bytes are a pure function of the config (wall_time field aside).
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes the per-curve CSVs (scale,value,ci_low,ci_high,censored) for a
// results.json document; returns the paths written.
std::vector<std::string> emit_plot_data(const std::string& results_json_text,
                                        const std::string& out_dir);

} // namespace perc
