#include "perc/sampler.hpp"

#include <atomic>
#include <cstdio>
#include <cstring>
#include <unordered_set>

namespace perc {

namespace {

std::atomic<long> redraw_count{0};

void log_redraw(const char* what, std::uint64_t replica) {
    redraw_count.fetch_add(1, std::memory_order_relaxed);
    std::fprintf(stderr, "[sampler] redraw (%s) replica=%llu\n", what,
                 static_cast<unsigned long long>(replica));
}

std::uint64_t replica_seed(const SamplerSpec& spec, std::uint64_t replica,
                           std::uint64_t attempt) {
    return derive_seed(spec.master_seed, seed_tag::sample + 1000 * attempt, replica);
}

bool has_duplicate(const std::vector<Vec2>& pts) {
    struct Hash {
        std::size_t operator()(const Vec2& v) const {
            std::uint64_t a, b;
            static_assert(sizeof(double) == 8);
            std::memcpy(&a, &v.x, 8);
            std::memcpy(&b, &v.y, 8);
            std::uint64_t s = a ^ (b * 0x9e3779b97f4a7c15ULL);
            return static_cast<std::size_t>(splitmix64(s));
        }
    };
    struct Eq {
        bool operator()(const Vec2& a, const Vec2& b) const { return a == b; }
    };
    std::unordered_set<Vec2, Hash, Eq> seen(pts.size() * 2 + 1);
    for (const auto& p : pts)
        if (!seen.insert(p).second) return true;
    return false;
}

} // namespace

long sampler_redraw_count() { return redraw_count.load(std::memory_order_relaxed); }

PointConfig sample_poisson(const SamplerSpec& spec, std::uint64_t replica) {
    if (spec.process != ProcessKind::poisson)
        throw parameter_error("spec.process must be poisson");
    if (!(spec.intensity >= 0.0)) throw parameter_error("intensity must be >= 0");

    PointConfig config;
    config.window = spec.window;
    config.process = ProcessKind::poisson;
    config.seed = {spec.master_seed, replica};

    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(replica_seed(spec, replica, attempt));
        long count = rng.poisson(spec.intensity * spec.window.area());
        config.points.clear();
        config.points.reserve(static_cast<std::size_t>(count));
        const Vec2 c = spec.window.center;
        const double hw = spec.window.half_width;
        for (long i = 0; i < count; ++i) {
            double x = c.x + rng.uniform_in(-hw, hw);
            double y = c.y + rng.uniform_in(-hw, hw);
            config.points.push_back({x, y});
        }
        if (!has_duplicate(config.points)) return config;
        log_redraw("coincident points", replica);
    }
}

PointConfig sample_ginibre(const SamplerSpec& spec, std::uint64_t replica) {
    if (spec.process != ProcessKind::ginibre)
        throw parameter_error("spec.process must be ginibre");
    if (!spec.window.centered_at_origin())
        throw parameter_error("ginibre window must be centered at the origin");

    const long n = spec.derived_order();
    PointConfig config;
    config.window = spec.window;
    config.process = ProcessKind::ginibre;
    config.seed = {spec.master_seed, replica};
    config.truncation_order = n;

    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(replica_seed(spec, replica, attempt));
        std::vector<std::complex<double>> eigs;
        try {
            eigs = ginibre_eigenvalues_hessenberg(static_cast<int>(n), rng);
        } catch (const std::runtime_error&) {
            log_redraw("eigensolver non-convergence", replica);
            continue;
        }
        config.points.clear();
        for (const auto& w : eigs) {
            Vec2 p{w.real(), w.imag()};
            if (spec.window.contains(p)) config.points.push_back(p);
        }
        if (!has_duplicate(config.points)) return config;
        log_redraw("coincident points", replica);
    }
}

GafPolynomial gaf_polynomial_for_replica(const SamplerSpec& spec, std::uint64_t replica) {
    Rng rng(replica_seed(spec, replica, 0));
    return draw_gaf_polynomial(static_cast<int>(spec.derived_order()), rng);
}

PointConfig sample_gaf_zeros(const SamplerSpec& spec, std::uint64_t replica) {
    if (spec.process != ProcessKind::gaf)
        throw parameter_error("spec.process must be gaf");
    if (!spec.window.centered_at_origin())
        throw parameter_error("gaf window must be centered at the origin");

    const long n = spec.derived_order();
    PointConfig config;
    config.window = spec.window;
    config.process = ProcessKind::gaf;
    config.seed = {spec.master_seed, replica};
    config.truncation_order = n;

    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(replica_seed(spec, replica, attempt));
        GafPolynomial poly = draw_gaf_polynomial(static_cast<int>(n), rng);
        // reconciliation failures propagate: never silently drop zeros
        std::vector<cplx> roots = find_polynomial_roots(poly, spec.window);
        config.points.clear();
        config.points.reserve(roots.size());
        for (const auto& r : roots) config.points.push_back({r.real(), r.imag()});
        if (!has_duplicate(config.points)) return config;
        log_redraw("coincident points", replica);
    }
}

PointConfig sample(const SamplerSpec& spec, std::uint64_t replica) {
    switch (spec.process) {
        case ProcessKind::poisson: return sample_poisson(spec, replica);
        case ProcessKind::ginibre: return sample_ginibre(spec, replica);
        case ProcessKind::gaf: return sample_gaf_zeros(spec, replica);
        default: throw parameter_error("cannot sample an external process");
    }
}

} // namespace perc
