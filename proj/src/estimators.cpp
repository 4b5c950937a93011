#include "perc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perc/boolean_graph.hpp"
#include "perc/thread_pool.hpp"

namespace perc {

namespace {

constexpr double kPi = 3.14159265358979323846;

SamplerSpec with_derived_master(SamplerSpec spec, std::uint64_t tag, std::uint64_t sweep) {
    spec.master_seed = derive_seed(spec.master_seed, tag, 0, sweep);
    return spec;
}

long count_hits(const std::vector<char>& flags) {
    long h = 0;
    for (char f : flags) h += f != 0;
    return h;
}

double effective_intensity(const SamplerSpec& spec) {
    return spec.process == ProcessKind::poisson ? spec.intensity : 1.0 / kPi;
}

bool point_in_region(const RegionSpec& region, Vec2 p) {
    if (region.kind == RegionSpec::Kind::disk) return norm2(p) < region.radius;
    auto i = static_cast<std::int64_t>(std::floor(p.x / region.theta));
    auto j = static_cast<std::int64_t>(std::floor(p.y / region.theta));
    for (const auto& s : region.squares)
        if (s.i == i && s.j == j) return true;
    return false;
}

bool region_hole(const RegionSpec& region, const PointConfig& config) {
    for (const auto& p : config.points)
        if (point_in_region(region, p)) return false;
    return true;
}

bool region_overcrowded(const RegionSpec& region, long k, const PointConfig& config) {
    std::vector<long> counts(region.squares.size(), 0);
    for (const auto& p : config.points) {
        auto i = static_cast<std::int64_t>(std::floor(p.x / region.theta));
        auto j = static_cast<std::int64_t>(std::floor(p.y / region.theta));
        for (std::size_t s = 0; s < region.squares.size(); ++s)
            if (region.squares[s].i == i && region.squares[s].j == j) ++counts[s];
    }
    for (long c : counts)
        if (c < k) return false;
    return true;
}

void check_region_in_bulk(const SamplerSpec& spec, const RegionSpec& region) {
    if (region.required_half_width() > spec.window.half_width)
        throw parameter_error("region outside the sampling window bulk");
}

std::vector<MCEstimate> per_region_estimates(const std::vector<char>& flags, long n,
                                             std::size_t n_regions, std::uint64_t seed) {
    std::vector<MCEstimate> out;
    for (std::size_t s = 0; s < n_regions; ++s) {
        long hits = 0;
        for (long i = 0; i < n; ++i)
            hits += flags[static_cast<std::size_t>(i) * n_regions + s] != 0;
        out.push_back(MCEstimate::from_counts(hits, n, seed));
    }
    return out;
}

} // namespace

RegionSpec RegionSpec::disk(double R) {
    if (!(R >= 0.0)) throw parameter_error("disk radius must be >= 0");
    RegionSpec r;
    r.kind = Kind::disk;
    r.radius = R;
    return r;
}

RegionSpec RegionSpec::chain(double theta, long length) {
    if (!(theta > 0.0)) throw parameter_error("theta must be > 0");
    if (length < 1) throw parameter_error("chain length must be >= 1");
    RegionSpec r;
    r.kind = Kind::square_chain;
    r.theta = theta;
    std::int64_t i0 = -((length + 1) / 2);
    for (long s = 0; s < length; ++s) r.squares.push_back({i0 + s, 0});
    return r;
}

double RegionSpec::required_half_width() const {
    if (kind == Kind::disk) return radius;
    double m = 0.0;
    for (const auto& s : squares)
        m = std::max(m, static_cast<double>(square_linf_max(s)) * theta);
    return m;
}

double RegionSpec::area() const {
    if (kind == Kind::disk) return kPi * radius * radius;
    return theta * theta * static_cast<double>(squares.size());
}

std::vector<char> crossing_outcomes(const SamplerSpec& spec, const std::vector<double>& r_values,
                                    double L, long n, std::uint64_t seed_tag,
                                    std::uint64_t sweep, unsigned threads) {
    if (n < 1) throw parameter_error("n must be >= 1");
    for (double r : r_values)
        if (!(r > 0.0)) throw parameter_error("r must be > 0");

    SamplerSpec run = with_derived_master(spec, seed_tag, sweep);
    run.window = Window(L);

    std::vector<char> flags(static_cast<std::size_t>(n) * r_values.size(), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t replica) {
        PointConfig config = sample(run, replica);
        for (std::size_t s = 0; s < r_values.size(); ++s) {
            ClusterLabeling labeling = build_clusters(config, r_values[s]);
            flags[replica * r_values.size() + s] =
                edge_to_edge_crossing(labeling, config, Axis::horizontal) ? 1 : 0;
        }
    });
    return flags;
}

MCEstimate estimate_crossing_prob(const SamplerSpec& spec, double r, double L, long n,
                                  unsigned threads) {
    auto flags = crossing_outcomes(spec, {r}, L, n, seed_tag::percolate, 0, threads);
    return MCEstimate::from_counts(count_hits(flags), n, spec.master_seed);
}

RcEstimate estimate_critical_radius(const SamplerSpec& spec, const std::vector<double>& L_schedule,
                                    long n_per_step, double tol, unsigned threads) {
    if (L_schedule.empty()) throw parameter_error("L_schedule must be non-empty");
    if (!std::is_sorted(L_schedule.begin(), L_schedule.end()))
        throw parameter_error("L_schedule must be increasing");
    if (!(tol > 0.0)) throw parameter_error("tol must be > 0");
    if (n_per_step < 1) throw parameter_error("n_per_step must be >= 1");

    RcEstimate out;
    out.target_prob = 0.5;

    // scale-rule starting bracket around the Poisson threshold at matched
    // intensity
    double r0 = 0.6 / std::sqrt(effective_intensity(spec));
    double lo = 0.5 * r0, hi = 2.0 * r0;

    auto estimate_at = [&](double r, double L, std::uint64_t sweep) {
        auto flags = crossing_outcomes(spec, {r}, L, n_per_step, seed_tag::rc, sweep, threads);
        MCEstimate e = MCEstimate::from_counts(count_hits(flags), n_per_step, spec.master_seed);
        out.steps.push_back({L, r, e});
        return e;
    };

    std::uint64_t sweep = 0;
    for (std::size_t li = 0; li < L_schedule.size(); ++li, ++sweep) {
        double L = L_schedule[li];
        bool final_L = li + 1 == L_schedule.size();
        for (int guard = 0; estimate_at(lo, L, sweep).p_hat >= 0.5 && guard < 24; ++guard)
            lo *= 0.7;
        for (int guard = 0; estimate_at(hi, L, sweep).p_hat <= 0.5 && guard < 24; ++guard)
            hi *= 1.4;
        double width_goal = final_L ? tol : std::max(tol, 0.05 * (lo + hi));
        while (hi - lo > width_goal) {
            double mid = 0.5 * (lo + hi);
            MCEstimate e = estimate_at(mid, L, sweep);
            if (e.p_hat < 0.5)
                lo = mid;
            else
                hi = mid;
        }
        out.L = L;
    }

    out.r_lo = lo;
    out.r_hi = hi;
    out.r_hat = 0.5 * (lo + hi);
    MCEstimate at_lo = estimate_at(lo, out.L, sweep);
    MCEstimate at_hi = estimate_at(hi, out.L, sweep);
    out.conclusive = at_lo.ci_high < 0.5 && at_hi.ci_low > 0.5;
    return out;
}

std::vector<MCEstimate> estimate_hole_curve(const SamplerSpec& spec,
                                            const std::vector<RegionSpec>& regions, long n,
                                            unsigned threads) {
    if (n < 1) throw parameter_error("n must be >= 1");
    for (const auto& region : regions) check_region_in_bulk(spec, region);
    SamplerSpec run = with_derived_master(spec, seed_tag::hole, 0);
    std::vector<char> flags(static_cast<std::size_t>(n) * regions.size(), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t replica) {
        PointConfig config = sample(run, replica);
        for (std::size_t s = 0; s < regions.size(); ++s)
            flags[replica * regions.size() + s] = region_hole(regions[s], config) ? 1 : 0;
    });
    return per_region_estimates(flags, n, regions.size(), spec.master_seed);
}

std::vector<MCEstimate> estimate_overcrowding_curve(const SamplerSpec& spec,
                                                    const std::vector<RegionSpec>& regions,
                                                    long k, long n, unsigned threads) {
    if (n < 1) throw parameter_error("n must be >= 1");
    if (k < 0) throw parameter_error("k must be >= 0");
    for (const auto& region : regions) {
        if (region.kind != RegionSpec::Kind::square_chain)
            throw parameter_error("overcrowding needs square-chain regions");
        check_region_in_bulk(spec, region);
    }
    SamplerSpec run = with_derived_master(spec, seed_tag::overcrowd, 0);
    std::vector<char> flags(static_cast<std::size_t>(n) * regions.size(), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t replica) {
        PointConfig config = sample(run, replica);
        for (std::size_t s = 0; s < regions.size(); ++s)
            flags[replica * regions.size() + s] =
                region_overcrowded(regions[s], k, config) ? 1 : 0;
    });
    return per_region_estimates(flags, n, regions.size(), spec.master_seed);
}

MCEstimate estimate_hole_probability(const SamplerSpec& spec, const RegionSpec& region, long n,
                                     unsigned threads) {
    return estimate_hole_curve(spec, {region}, n, threads)[0];
}

MCEstimate estimate_overcrowding_probability(const SamplerSpec& spec, const RegionSpec& region,
                                             long k, long n, unsigned threads) {
    return estimate_overcrowding_curve(spec, {region}, k, n, threads)[0];
}

DecayFit fit_exponential_decay(const std::vector<std::pair<double, MCEstimate>>& pairs) {
    DecayFit fit;
    std::vector<double> xs, ys;
    for (const auto& [scale, est] : pairs) {
        bool censored = est.n_hits == 0;
        fit.points.push_back({scale, est, censored});
        if (!censored) {
            xs.push_back(scale);
            ys.push_back(std::log(est.p_hat));
        }
    }
    fit.n_uncensored = static_cast<int>(xs.size());
    if (fit.n_uncensored < 3)
        throw insufficient_data_error("fit needs >= 3 uncensored (scale, p) pairs");
    stats::LinearFit lf = stats::fit_line(xs, ys);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.r_squared = lf.r_squared;
    return fit;
}

std::vector<std::pair<double, MCEstimate>> estimate_uniqueness_curve(
    const SamplerSpec& spec, double r, const std::vector<double>& L_list, long n,
    unsigned threads) {
    if (!(r > 0.0)) throw parameter_error("r must be > 0");
    if (n < 1) throw parameter_error("n must be >= 1");
    std::vector<std::pair<double, MCEstimate>> out;
    std::uint64_t sweep = 0;
    for (double L : L_list) {
        SamplerSpec run = with_derived_master(spec, seed_tag::unique, sweep++);
        run.window = Window(L);
        std::vector<char> flags(static_cast<std::size_t>(n), 0);
        parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t replica) {
            PointConfig config = sample(run, replica);
            ClusterLabeling labeling = build_clusters(config, r);
            long crossings = count_annulus_crossing_clusters(labeling, L / 4.0, 3.0 * L / 4.0);
            flags[replica] = crossings >= 2 ? 1 : 0;
        });
        out.emplace_back(L, MCEstimate::from_counts(count_hits(flags), n, spec.master_seed));
    }
    return out;
}

MCEstimate estimate_field_min_tail(double nu, double R, long n, std::uint64_t master_seed,
                                   double buffer, unsigned threads) {
    if (!(nu > 2.0)) throw parameter_error("nu must be > 2");
    if (!(R > 1.0)) throw parameter_error("R must be > 1");
    if (n < 1) throw parameter_error("n must be >= 1");

    SamplerSpec spec;
    spec.process = ProcessKind::gaf;
    spec.window = Window(R);
    spec.buffer = buffer;
    spec.master_seed = derive_seed(master_seed, seed_tag::fieldmin, 0);
    const int degree = static_cast<int>(spec.derived_order());
    const double threshold = std::exp(-nu * R * R);

    std::vector<char> flags(static_cast<std::size_t>(n), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t replica) {
        Rng rng(derive_seed(spec.master_seed, seed_tag::sample, replica));
        GafPolynomial poly = draw_gaf_polynomial(degree, rng);
        double prev_min = -1.0;
        long nodes = 256;
        double cur_min = 0.0;
        for (int rounds = 0; rounds < 8; ++rounds, nodes *= 2) {
            cur_min = std::numeric_limits<double>::infinity();
            for (long t = 0; t < nodes; ++t) {
                double a = 2.0 * kPi * static_cast<double>(t) / static_cast<double>(nodes);
                cplx z = std::polar(R, a);
                cur_min = std::min(cur_min, std::abs(evaluate_normalized_gaf(poly, z)));
            }
            if (prev_min > 0.0 && std::abs(cur_min - prev_min) < 0.01 * prev_min) break;
            prev_min = cur_min;
        }
        flags[replica] = cur_min <= threshold ? 1 : 0;
    });
    return MCEstimate::from_counts(count_hits(flags), n, master_seed);
}

} // namespace perc
