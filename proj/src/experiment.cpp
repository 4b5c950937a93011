#include "perc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "perc/io_util.hpp"
#include "perc/roots.hpp"
#include "perc/thread_pool.hpp"

namespace perc {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json estimate_json(const MCEstimate& e) {
    return {{"p_hat", e.p_hat}, {"ci_low", e.ci_low},   {"ci_high", e.ci_high},
            {"n_samples", e.n_samples}, {"n_hits", e.n_hits}};
}

const char* kKindNames[] = {"sample", "percolate",     "rc",           "hole", "overcrowd",
                            "unique", "fieldmin",      "verify-discr1", "verify-discr2"};

} // namespace

std::string to_string(ExperimentKind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<ExperimentKind> experiment_kind_from_string(const std::string& s) {
    for (int i = 0; i < 9; ++i)
        if (s == kKindNames[i]) return static_cast<ExperimentKind>(i);
    return std::nullopt;
}

SamplerSpec ExperimentConfig::sampler_spec() const {
    SamplerSpec spec;
    spec.process = process;
    spec.intensity = intensity;
    spec.buffer = buffer;
    spec.master_seed = seed;
    spec.window = Window(half_width > 0 ? half_width : 1.0);
    return spec;
}

// ---------------------------------------------------------------------------
// validation

namespace {

struct Validator {
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg) {
        errors.push_back(path + ": " + msg);
    }

    void reject_unknown(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* a : allowed)
                if (it.key() == a) ok = true;
            if (!ok) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
        }
    }

    bool require(const json& obj, const std::string& path, const char* key) {
        if (!obj.contains(key)) {
            fail(path.empty() ? key : path + "." + std::string(key), "required field missing");
            return false;
        }
        return true;
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key,
                                 bool required, double lo, double hi, const char* constraint) {
        std::string full = path.empty() ? key : path + "." + std::string(key);
        if (!obj.contains(key)) {
            if (required) fail(full, "required field missing");
            return std::nullopt;
        }
        if (!obj[key].is_number()) {
            fail(full, "must be a number");
            return std::nullopt;
        }
        double v = obj[key].get<double>();
        if (!(v >= lo && v <= hi)) {
            fail(full, constraint);
            return std::nullopt;
        }
        return v;
    }

    std::optional<long> integer(const json& obj, const std::string& path, const char* key,
                                bool required, long lo, const char* constraint) {
        std::string full = path.empty() ? key : path + "." + std::string(key);
        if (!obj.contains(key)) {
            if (required) fail(full, "required field missing");
            return std::nullopt;
        }
        if (!obj[key].is_number_integer() && !obj[key].is_number_unsigned()) {
            fail(full, "must be an integer");
            return std::nullopt;
        }
        long v = obj[key].get<long>();
        if (v < lo) {
            fail(full, constraint);
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::vector<double>> number_array(const json& obj, const std::string& path,
                                                    const char* key, bool required,
                                                    bool increasing, double lo,
                                                    const char* constraint) {
        std::string full = path.empty() ? key : path + "." + std::string(key);
        if (!obj.contains(key)) {
            if (required) fail(full, "required field missing");
            return std::nullopt;
        }
        if (!obj[key].is_array() || obj[key].empty()) {
            fail(full, "must be a non-empty array");
            return std::nullopt;
        }
        std::vector<double> out;
        for (const auto& v : obj[key]) {
            if (!v.is_number()) {
                fail(full, "must contain numbers");
                return std::nullopt;
            }
            out.push_back(v.get<double>());
        }
        for (double v : out)
            if (!(v > lo)) {
                fail(full, constraint);
                return std::nullopt;
            }
        if (increasing && !std::is_sorted(out.begin(), out.end())) {
            fail(full, "must be increasing");
            return std::nullopt;
        }
        return out;
    }
};

void validate_region(Validator& v, const json& params, ExperimentConfig& cfg) {
    if (!v.require(params, "params", "region")) return;
    const json& region = params["region"];
    if (!region.is_object()) {
        v.fail("params.region", "must be an object");
        return;
    }
    v.reject_unknown(region, "params.region", {"kind", "radii", "theta", "lengths"});
    if (!v.require(region, "params.region", "kind")) return;
    std::string kind = region["kind"].is_string() ? region["kind"].get<std::string>() : "";
    if (kind == "disk") {
        v.reject_unknown(region, "params.region", {"kind", "radii"});
        auto radii = v.number_array(region, "params.region", "radii", true, true, -1.0,
                                    "radii must be >= 0");
        if (radii) {
            cfg.region = RegionSpec::disk(radii->back());
            cfg.region_scales = *radii;
        }
    } else if (kind == "chain") {
        v.reject_unknown(region, "params.region", {"kind", "theta", "lengths"});
        auto theta = v.number(region, "params.region", "theta", true, 1e-12, 1e9,
                              "theta must be > 0");
        auto lengths = v.number_array(region, "params.region", "lengths", true, true, 0.0,
                                      "lengths must be positive integers");
        if (theta && lengths) {
            for (double L : *lengths)
                if (L != std::floor(L)) v.fail("params.region.lengths", "must be integers");
            if (v.errors.empty()) {
                cfg.region = RegionSpec::chain(*theta, static_cast<long>(lengths->back()));
                cfg.region_scales = *lengths;
                cfg.theta = *theta;
            }
        }
    } else {
        v.fail("params.region.kind", "must be \"disk\" or \"chain\"");
    }
}

} // namespace

std::variant<ExperimentConfig, ConfigErrors> validate_config(const std::string& raw_json) {
    Validator v;
    json root;
    try {
        root = json::parse(raw_json);
    } catch (const json::parse_error& e) {
        return ConfigErrors{{std::string("document: invalid JSON: ") + e.what()}};
    }
    if (!root.is_object()) return ConfigErrors{{"document: must be a JSON object"}};

    ExperimentConfig cfg;
    v.reject_unknown(root, "",
                     {"experiment", "process", "seed", "n_samples", "buffer", "threads", "out",
                      "params"});

    if (v.require(root, "", "experiment")) {
        std::string s = root["experiment"].is_string() ? root["experiment"].get<std::string>()
                                                       : "";
        auto kind = experiment_kind_from_string(s);
        if (!kind)
            v.fail("experiment",
                   "must be one of sample|percolate|rc|hole|overcrowd|unique|fieldmin|"
                   "verify-discr1|verify-discr2");
        else
            cfg.kind = *kind;
    }

    if (v.require(root, "", "process")) {
        const json& proc = root["process"];
        if (!proc.is_object()) {
            v.fail("process", "must be an object");
        } else {
            v.reject_unknown(proc, "process", {"type", "intensity"});
            if (v.require(proc, "process", "type")) {
                std::string t = proc["type"].is_string() ? proc["type"].get<std::string>() : "";
                if (t == "poisson")
                    cfg.process = ProcessKind::poisson;
                else if (t == "ginibre")
                    cfg.process = ProcessKind::ginibre;
                else if (t == "gaf")
                    cfg.process = ProcessKind::gaf;
                else
                    v.fail("process.type", "must be poisson|ginibre|gaf");
            }
            if (proc.contains("intensity")) {
                if (cfg.process != ProcessKind::poisson)
                    v.fail("process.intensity", "only meaningful for the poisson process");
                auto val = v.number(proc, "process", "intensity", false, 0.0, 1e12,
                                    "intensity must be >= 0");
                if (val) cfg.intensity = *val;
            }
        }
    }

    if (v.require(root, "", "seed")) {
        if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
            v.fail("seed", "must be a non-negative integer");
        else if (root["seed"].is_number_integer() && root["seed"].get<long long>() < 0)
            v.fail("seed", "must be a non-negative integer");
        else
            cfg.seed = root["seed"].get<std::uint64_t>();
    }
    if (auto n = v.integer(root, "", "n_samples", true, 1, "must be >= 1")) cfg.n_samples = *n;
    if (auto b = v.number(root, "", "buffer", false, 0.0, 1e6, "must be >= 0")) cfg.buffer = *b;
    if (auto t = v.integer(root, "", "threads", false, 0, "must be >= 0"))
        cfg.threads = static_cast<unsigned>(*t);
    if (root.contains("out")) {
        if (!root["out"].is_string())
            v.fail("out", "must be a string");
        else
            cfg.out_dir = root["out"].get<std::string>();
    }

    const json params = root.contains("params") && root["params"].is_object()
                            ? root["params"]
                            : json::object();
    if (v.require(root, "", "params") && !root["params"].is_object())
        v.fail("params", "must be an object");

    auto hw = [&](bool required) {
        if (auto w = v.number(params, "params", "half_width", required, 1e-12, 1e9,
                              "must be > 0"))
            cfg.half_width = *w;
    };

    switch (cfg.kind) {
        case ExperimentKind::sample:
            v.reject_unknown(params, "params", {"half_width"});
            hw(true);
            break;
        case ExperimentKind::percolate: {
            v.reject_unknown(params, "params", {"L", "r_values"});
            if (auto L = v.number(params, "params", "L", true, 1e-12, 1e9, "must be > 0"))
                cfg.L = *L;
            if (auto rv = v.number_array(params, "params", "r_values", true, true, 0.0,
                                         "must be > 0"))
                cfg.r_values = *rv;
            break;
        }
        case ExperimentKind::rc: {
            v.reject_unknown(params, "params", {"L_schedule", "n_per_step", "tol"});
            if (auto ls = v.number_array(params, "params", "L_schedule", true, true, 0.0,
                                         "must be > 0"))
                cfg.L_schedule = *ls;
            if (auto n = v.integer(params, "params", "n_per_step", true, 1, "must be >= 1"))
                cfg.n_per_step = *n;
            if (auto t = v.number(params, "params", "tol", true, 1e-12, 1e9, "must be > 0"))
                cfg.tol = *t;
            break;
        }
        case ExperimentKind::hole:
            v.reject_unknown(params, "params", {"half_width", "region"});
            hw(true);
            validate_region(v, params, cfg);
            break;
        case ExperimentKind::overcrowd:
            v.reject_unknown(params, "params", {"half_width", "region", "k"});
            hw(true);
            validate_region(v, params, cfg);
            if (cfg.region.kind != RegionSpec::Kind::square_chain && v.errors.empty())
                v.fail("params.region.kind", "overcrowd requires a chain region");
            if (auto k = v.integer(params, "params", "k", true, 0, "must be >= 0")) cfg.k = *k;
            break;
        case ExperimentKind::unique: {
            v.reject_unknown(params, "params", {"r", "L_list"});
            if (auto r = v.number(params, "params", "r", true, 1e-12, 1e9, "must be > 0"))
                cfg.r = *r;
            if (auto ls = v.number_array(params, "params", "L_list", true, true, 0.0,
                                         "must be > 0"))
                cfg.L_list = *ls;
            break;
        }
        case ExperimentKind::fieldmin: {
            v.reject_unknown(params, "params", {"nu", "R"});
            if (auto nu = v.number(params, "params", "nu", true, 2.0 + 1e-12, 1e9,
                                   "nu must be > 2"))
                cfg.nu = *nu;
            if (auto R = v.number(params, "params", "R", true, 1.0 + 1e-12, 1e9, "R must be > 1"))
                cfg.R = *R;
            break;
        }
        case ExperimentKind::verify_discr1: {
            v.reject_unknown(params, "params", {"half_width", "r", "L"});
            hw(true);
            if (auto r = v.number(params, "params", "r", true, 1e-12, 1e9, "must be > 0"))
                cfg.r = *r;
            if (auto L = v.integer(params, "params", "L", true, 1, "must be >= 1"))
                cfg.lattice_L = *L;
            if (cfg.half_width > 0 && cfg.r > 0 && cfg.lattice_L > 0) {
                double need = static_cast<double>(cfg.lattice_L) * cfg.r / std::sqrt(5.0);
                if (cfg.half_width < need)
                    v.fail("params.half_width", "window must cover B_{L*theta}, need >= " +
                                                     fmt17(need));
            }
            break;
        }
        case ExperimentKind::verify_discr2: {
            v.reject_unknown(params, "params", {"half_width", "r", "theta", "k", "L"});
            hw(true);
            if (auto r = v.number(params, "params", "r", true, 1e-12, 1e9, "must be > 0"))
                cfg.r = *r;
            if (auto th = v.number(params, "params", "theta", true, 1e-12, 1e9, "must be > 0"))
                cfg.theta = *th;
            if (auto k = v.integer(params, "params", "k", true, 0, "must be >= 0")) cfg.k = *k;
            if (auto L = v.integer(params, "params", "L", true, 1, "must be >= 1"))
                cfg.lattice_L = *L;
            if (cfg.r > 0 && cfg.theta > 0 && cfg.k >= 1 &&
                !(cfg.r < cfg.theta / (18.0 * static_cast<double>(cfg.k))))
                v.fail("params.r", "violates r < theta/(18k)");
            if (cfg.half_width > 0 && cfg.theta > 0 && cfg.lattice_L > 0 &&
                cfg.half_width < static_cast<double>(cfg.lattice_L) * cfg.theta)
                v.fail("params.half_width", "window must cover B_{L*theta}");
            break;
        }
    }

    if ((cfg.process == ProcessKind::ginibre || cfg.process == ProcessKind::gaf) &&
        cfg.kind == ExperimentKind::sample && cfg.half_width > 0) {
        // windows for the finite models sit at the origin by construction
    }

    if (!v.errors.empty()) return ConfigErrors{std::move(v.errors)};
    return cfg;
}

// ---------------------------------------------------------------------------
// resolved echo

std::string ExperimentConfig::resolved_json() const {
    json j;
    j["experiment"] = to_string(kind);
    j["process"] = {{"type", ::perc::to_string(process)}};
    if (process == ProcessKind::poisson) j["process"]["intensity"] = intensity;
    j["seed"] = seed;
    j["n_samples"] = n_samples;
    j["buffer"] = buffer;
    j["threads"] = threads;
    j["out"] = out_dir;
    json p = json::object();
    switch (kind) {
        case ExperimentKind::sample: p["half_width"] = half_width; break;
        case ExperimentKind::percolate:
            p["L"] = L;
            p["r_values"] = r_values;
            break;
        case ExperimentKind::rc:
            p["L_schedule"] = L_schedule;
            p["n_per_step"] = n_per_step;
            p["tol"] = tol;
            break;
        case ExperimentKind::hole:
        case ExperimentKind::overcrowd:
            p["half_width"] = half_width;
            if (region.kind == RegionSpec::Kind::disk)
                p["region"] = {{"kind", "disk"}, {"radii", region_scales}};
            else
                p["region"] = {{"kind", "chain"}, {"theta", region.theta},
                               {"lengths", region_scales}};
            if (kind == ExperimentKind::overcrowd) p["k"] = k;
            break;
        case ExperimentKind::unique:
            p["r"] = r;
            p["L_list"] = L_list;
            break;
        case ExperimentKind::fieldmin:
            p["nu"] = nu;
            p["R"] = R;
            break;
        case ExperimentKind::verify_discr1:
            p["half_width"] = half_width;
            p["r"] = r;
            p["L"] = lattice_L;
            break;
        case ExperimentKind::verify_discr2:
            p["half_width"] = half_width;
            p["r"] = r;
            p["theta"] = theta;
            p["k"] = k;
            p["L"] = lattice_L;
            break;
    }
    j["params"] = p;
    return j.dump();
}

// ---------------------------------------------------------------------------
// runner

namespace {

json run_sample(const ExperimentConfig& cfg, unsigned threads) {
    SamplerSpec spec = cfg.sampler_spec();
    json files = json::array();
    std::vector<std::pair<std::string, std::string>> names(
        static_cast<std::size_t>(cfg.n_samples));
    parallel_for(static_cast<std::size_t>(cfg.n_samples), threads, [&](std::size_t i) {
        PointConfig config = sample(spec, i);
        char base[64];
        std::snprintf(base, sizeof(base), "points_r%03zu", i);
        std::string csv = cfg.out_dir + "/" + base + ".csv";
        std::string meta = cfg.out_dir + "/" + base + ".meta.json";
        write_points_csv(config, csv);
        write_points_metadata(config, meta);
        names[i] = {csv, meta};
    });
    json counts = json::array();
    for (const auto& [csv, meta] : names) {
        files.push_back(csv);
        files.push_back(meta);
    }
    json out;
    out["files"] = files;
    return out;
}

json run_percolate(const ExperimentConfig& cfg, unsigned threads) {
    SamplerSpec spec = cfg.sampler_spec();
    auto flags = crossing_outcomes(spec, cfg.r_values, cfg.L, cfg.n_samples,
                                   seed_tag::percolate, 0, threads);
    json estimates = json::array();
    for (std::size_t s = 0; s < cfg.r_values.size(); ++s) {
        long hits = 0;
        for (long i = 0; i < cfg.n_samples; ++i)
            hits += flags[static_cast<std::size_t>(i) * cfg.r_values.size() + s] != 0;
        json e = estimate_json(MCEstimate::from_counts(hits, cfg.n_samples, cfg.seed));
        e["scale"] = cfg.r_values[s];
        estimates.push_back(e);
    }
    json out;
    out["estimates"] = estimates;
    return out;
}

json run_rc(const ExperimentConfig& cfg, unsigned threads) {
    SamplerSpec spec = cfg.sampler_spec();
    RcEstimate rc =
        estimate_critical_radius(spec, cfg.L_schedule, cfg.n_per_step, cfg.tol, threads);
    json steps = json::array();
    for (const auto& st : rc.steps) {
        json e = estimate_json(st.estimate);
        e["L"] = st.L;
        e["scale"] = st.r;
        steps.push_back(e);
    }
    json out;
    out["r_hat"] = rc.r_hat;
    out["bracket"] = {rc.r_lo, rc.r_hi};
    out["L"] = rc.L;
    out["target_prob"] = rc.target_prob;
    out["conclusive"] = rc.conclusive;
    out["estimates"] = steps;
    return out;
}

json run_hole_like(const ExperimentConfig& cfg, unsigned threads, bool overcrowd) {
    SamplerSpec spec = cfg.sampler_spec();
    std::vector<RegionSpec> regions;
    for (double s : cfg.region_scales) {
        if (cfg.region.kind == RegionSpec::Kind::disk)
            regions.push_back(RegionSpec::disk(s));
        else
            regions.push_back(RegionSpec::chain(cfg.region.theta, static_cast<long>(s)));
    }
    std::vector<MCEstimate> ests =
        overcrowd ? estimate_overcrowding_curve(spec, regions, cfg.k, cfg.n_samples, threads)
                  : estimate_hole_curve(spec, regions, cfg.n_samples, threads);
    json estimates = json::array();
    std::vector<std::pair<double, MCEstimate>> pairs;
    for (std::size_t i = 0; i < ests.size(); ++i) {
        json e = estimate_json(ests[i]);
        e["scale"] = cfg.region_scales[i];
        e["censored"] = ests[i].n_hits == 0;
        estimates.push_back(e);
        pairs.emplace_back(cfg.region_scales[i], ests[i]);
    }
    json out;
    out["estimates"] = estimates;
    try {
        DecayFit fit = fit_exponential_decay(pairs);
        out["fit"] = {{"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"r_squared", fit.r_squared},
                      {"n_uncensored", fit.n_uncensored}};
    } catch (const insufficient_data_error&) {
        out["fit"] = nullptr;
    }
    return out;
}

json run_unique(const ExperimentConfig& cfg, unsigned threads) {
    SamplerSpec spec = cfg.sampler_spec();
    auto curve = estimate_uniqueness_curve(spec, cfg.r, cfg.L_list, cfg.n_samples, threads);
    json estimates = json::array();
    for (const auto& [L, est] : curve) {
        json e = estimate_json(est);
        e["scale"] = L;
        estimates.push_back(e);
    }
    json out;
    out["r"] = cfg.r;
    out["estimates"] = estimates;
    return out;
}

json run_fieldmin(const ExperimentConfig& cfg, unsigned threads) {
    MCEstimate est =
        estimate_field_min_tail(cfg.nu, cfg.R, cfg.n_samples, cfg.seed, cfg.buffer, threads);
    json e = estimate_json(est);
    e["scale"] = cfg.R;
    json out;
    out["nu"] = cfg.nu;
    out["threshold"] = std::exp(-cfg.nu * cfg.R * cfg.R);
    out["estimates"] = json::array({e});
    return out;
}

json run_verify(const ExperimentConfig& cfg, unsigned threads, bool discr2) {
    SamplerSpec spec = cfg.sampler_spec();
    spec.master_seed =
        derive_seed(cfg.seed, discr2 ? seed_tag::discr2 : seed_tag::discr1, 0);
    const long n = cfg.n_samples;
    std::vector<char> premise(static_cast<std::size_t>(n), 0);
    std::vector<char> counterexample(static_cast<std::size_t>(n), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        PointConfig config = sample(spec, i);
        DiscretizationVerdict verdict =
            discr2 ? verify_discr2(config, cfg.r, cfg.theta, cfg.k, cfg.lattice_L)
                   : verify_discr1(config, cfg.r, cfg.lattice_L);
        premise[i] = verdict.premise_holds ? 1 : 0;
        counterexample[i] = verdict.counterexample() ? 1 : 0;
    });
    long n_premise = 0, n_counter = 0;
    json counter_list = json::array();
    for (long i = 0; i < n; ++i) {
        n_premise += premise[static_cast<std::size_t>(i)] != 0;
        if (counterexample[static_cast<std::size_t>(i)]) {
            ++n_counter;
            if (counter_list.size() < 16) counter_list.push_back(i);
        }
    }
    json out;
    out["trials"] = n;
    out["premise_count"] = n_premise;
    out["counterexample_count"] = n_counter;
    out["counterexample_replicas"] = counter_list;
    out["vacuous"] = n_premise == 0;
    return out;
}

std::string curve_file_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::percolate:
        case ExperimentKind::rc: return "crossing_vs_r.csv";
        case ExperimentKind::hole: return "log_hole_vs_L.csv";
        case ExperimentKind::overcrowd: return "log_overcrowd_vs_L.csv";
        case ExperimentKind::unique: return "unique_vs_L.csv";
        case ExperimentKind::fieldmin: return "fieldmin_vs_R.csv";
        default: return "";
    }
}

} // namespace

std::vector<std::string> emit_plot_data(const std::string& results_json_text,
                                        const std::string& out_dir) {
    json results = json::parse(results_json_text);
    auto kind = experiment_kind_from_string(results.at("experiment_kind").get<std::string>());
    if (!kind) throw parameter_error("results document has unknown experiment_kind");
    std::string name = curve_file_name(*kind);
    if (name.empty()) return {};
    if (!results.contains("estimates")) throw parameter_error("results document has no estimates");

    json rows = results["estimates"];
    if (*kind == ExperimentKind::rc) {
        // final-L bisection curve, sorted by r
        double finalL = results.at("L").get<double>();
        json filtered = json::array();
        for (const auto& e : rows)
            if (e.contains("L") && e["L"].get<double>() == finalL) filtered.push_back(e);
        std::vector<json> sorted(filtered.begin(), filtered.end());
        std::sort(sorted.begin(), sorted.end(), [](const json& a, const json& b) {
            return a["scale"].get<double>() < b["scale"].get<double>();
        });
        rows = json::array();
        for (auto& e : sorted) rows.push_back(e);
    }

    std::string csv = "scale,value,ci_low,ci_high,censored\n";
    for (const auto& e : rows) {
        bool censored = e.contains("censored") && e["censored"].get<bool>();
        csv += fmt17(e["scale"].get<double>()) + "," + fmt17(e["p_hat"].get<double>()) + "," +
               fmt17(e["ci_low"].get<double>()) + "," + fmt17(e["ci_high"].get<double>()) + "," +
               (censored ? "1" : "0") + "\n";
    }
    std::string path = out_dir + "/" + name;
    write_file_atomic(path, csv);
    return {path};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    auto t0 = std::chrono::steady_clock::now();
    try {
        std::filesystem::create_directories(cfg.out_dir);
        unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;
        json body;
        switch (cfg.kind) {
            case ExperimentKind::sample: body = run_sample(cfg, threads); break;
            case ExperimentKind::percolate: body = run_percolate(cfg, threads); break;
            case ExperimentKind::rc: body = run_rc(cfg, threads); break;
            case ExperimentKind::hole: body = run_hole_like(cfg, threads, false); break;
            case ExperimentKind::overcrowd: body = run_hole_like(cfg, threads, true); break;
            case ExperimentKind::unique: body = run_unique(cfg, threads); break;
            case ExperimentKind::fieldmin: body = run_fieldmin(cfg, threads); break;
            case ExperimentKind::verify_discr1: body = run_verify(cfg, threads, false); break;
            case ExperimentKind::verify_discr2: body = run_verify(cfg, threads, true); break;
        }
        body["experiment_kind"] = to_string(cfg.kind);
        body["process"] = json::parse(cfg.resolved_json())["process"];
        body["config"] = json::parse(cfg.resolved_json());
        body["master_seed"] = cfg.seed;
        body["version"] = kVersion;

        emit_plot_data(body.dump(), cfg.out_dir);

        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        body["wall_time"] = wall;
        result.results_path = cfg.out_dir + "/results.json";
        write_file_atomic(result.results_path, body.dump(2) + "\n");
        result.exit_code = 0;
        return result;
    } catch (const parameter_error& e) {
        json err = {{"error", {{"kind", "parameter"}, {"message", e.what()}}}};
        result.error_json = err.dump(2);
        result.exit_code = 2;
    } catch (const reconciliation_error& e) {
        json err = {{"error", {{"kind", "reconciliation"}, {"message", e.what()}}}};
        result.error_json = err.dump(2);
        result.exit_code = 3;
    } catch (const std::exception& e) {
        json err = {{"error", {{"kind", "runtime"}, {"message", e.what()}}}};
        result.error_json = err.dump(2);
        result.exit_code = 1;
    }
    return result;
}

} // namespace perc
