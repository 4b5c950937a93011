#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "perc/roots.hpp"
#include "perc/sampler.hpp"
#include "perc/stats.hpp"
#include "perc/thread_pool.hpp"

using namespace perc;

namespace {

constexpr double kPi = 3.14159265358979323846;

SamplerSpec make_spec(ProcessKind process, double hw, std::uint64_t seed,
                      double intensity = 1.0) {
    SamplerSpec spec;
    spec.process = process;
    spec.intensity = intensity;
    spec.window = Window(hw);
    spec.master_seed = seed;
    return spec;
}

double mean_count(const SamplerSpec& spec, int replicas, double* sigma_of_mean = nullptr) {
    std::vector<double> counts(static_cast<std::size_t>(replicas));
    parallel_for(static_cast<std::size_t>(replicas), 2, [&](std::size_t i) {
        counts[i] = static_cast<double>(sample(spec, i).points.size());
    });
    if (sigma_of_mean)
        *sigma_of_mean = stats::sample_std(counts) / std::sqrt(static_cast<double>(replicas));
    return stats::mean(counts);
}

} // namespace

TEST_CASE("poisson: zero intensity gives the empty configuration") {
    auto spec = make_spec(ProcessKind::poisson, 5.0, 7, 0.0);
    CHECK(sample_poisson(spec, 0).points.empty());
}

TEST_CASE("poisson: negative intensity is a parameter error") {
    auto spec = make_spec(ProcessKind::poisson, 5.0, 7, -1.0);
    CHECK_THROWS_AS(sample_poisson(spec, 0), parameter_error);
}

TEST_CASE("poisson: same (seed, replica) twice is bit-for-bit identical") {
    auto spec = make_spec(ProcessKind::poisson, 5.0, 99, 1.0);
    PointConfig a = sample_poisson(spec, 3);
    PointConfig b = sample_poisson(spec, 3);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
    PointConfig c = sample_poisson(spec, 4);
    CHECK(a.points.size() != c.points.size()); // overwhelmingly likely
}

TEST_CASE("poisson: mean count matches intensity * area") {
    // 10x10 window at intensity 1: mean over 1e4 replicas within 100 +- 3
    auto spec = make_spec(ProcessKind::poisson, 5.0, 11, 1.0);
    double m = mean_count(spec, 10000);
    CHECK(std::abs(m - 100.0) < 3.0);
    CHECK(std::abs(m - 100.0) < 0.5); // CLT band is actually ~0.1
}

TEST_CASE("ginibre: window must be centered at the origin") {
    SamplerSpec spec = make_spec(ProcessKind::ginibre, 3.0, 1);
    spec.window = Window({1.0, 0.0}, 3.0);
    CHECK_THROWS_AS(sample_ginibre(spec, 0), parameter_error);
}

TEST_CASE("ginibre: determinism and derived order") {
    auto spec = make_spec(ProcessKind::ginibre, 3.0, 5);
    CHECK(spec.derived_order() == 86); // ceil((3*sqrt(2)+5)^2)
    PointConfig a = sample_ginibre(spec, 1);
    PointConfig b = sample_ginibre(spec, 1);
    CHECK(a.points == b.points);
    CHECK(a.truncation_order == 86);
    for (const auto& p : a.points) CHECK(a.window.contains(p));
}

TEST_CASE("ginibre: mean count in a 6x6 window is 36/pi") {
    auto spec = make_spec(ProcessKind::ginibre, 3.0, 2024);
    double sigma = 0.0;
    double m = mean_count(spec, 200, &sigma);
    CHECK(std::abs(m - 36.0 / kPi) < 3.0 * sigma + 1e-9);
}

TEST_CASE("gaf: mean zero count in a 6x6 window is 36/pi") {
    auto spec = make_spec(ProcessKind::gaf, 3.0, 2025);
    double sigma = 0.0;
    double m = mean_count(spec, 200, &sigma);
    CHECK(std::abs(m - 36.0 / kPi) < 3.0 * sigma + 1e-9);
}

TEST_CASE("gaf: determinism and root certification") {
    auto spec = make_spec(ProcessKind::gaf, 2.0, 31);
    PointConfig a = sample_gaf_zeros(spec, 0);
    PointConfig b = sample_gaf_zeros(spec, 0);
    CHECK(a.points == b.points);

    // every accepted replica satisfies the residual bound and the
    // argument-principle count, by construction; spot-check both here
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        PointConfig config = sample_gaf_zeros(spec, rep);
        GafPolynomial poly = gaf_polynomial_for_replica(spec, rep);
        long winding = count_zeros_by_winding(poly, spec.window);
        CHECK(static_cast<long>(config.points.size()) == winding);
        for (const auto& p : config.points)
            CHECK(std::abs(evaluate_normalized_gaf(poly, {p.x, p.y})) < 1e-8);
    }
}

TEST_CASE("bulk intensity: sub-window deep inside the bulk sees 1/pi") {
    // 2x2 sub-window inside a 6x6 window
    auto gin = make_spec(ProcessKind::ginibre, 3.0, 555);
    auto gaf = make_spec(ProcessKind::gaf, 3.0, 556);
    for (const auto& spec : {gin, gaf}) {
        const int replicas = 2000;
        std::vector<double> counts(replicas);
        parallel_for(replicas, 2, [&](std::size_t i) {
            PointConfig config = sample(spec, i);
            long c = 0;
            for (const auto& p : config.points)
                if (norm_inf(p) <= 1.0) ++c;
            counts[i] = static_cast<double>(c);
        });
        double m = stats::mean(counts);
        double s = stats::sample_std(counts) / std::sqrt(static_cast<double>(replicas));
        CHECK(std::abs(m - 4.0 / kPi) < 3.0 * s + 1e-9);
    }
}

TEST_CASE("edge honesty: 1-unit corner strip intensity within 10% of 1/pi") {
    // corner square [hw-1,hw]^2 of the window; buffer 5 keeps the edge honest
    auto gin = make_spec(ProcessKind::ginibre, 3.0, 557);
    auto gaf = make_spec(ProcessKind::gaf, 3.0, 558);
    for (const auto& spec : {gin, gaf}) {
        const int replicas = spec.process == ProcessKind::ginibre ? 12000 : 6000;
        std::vector<double> counts(static_cast<std::size_t>(replicas));
        parallel_for(static_cast<std::size_t>(replicas), 2, [&](std::size_t i) {
            PointConfig config = sample(spec, i);
            long c = 0;
            for (const auto& p : config.points)
                if (p.x >= 2.0 && p.y >= 2.0) ++c;
            counts[i] = static_cast<double>(c);
        });
        double m = stats::mean(counts);
        CHECK(std::abs(m - 1.0 / kPi) / (1.0 / kPi) < 0.10);
    }
}

TEST_CASE("dispatch covers the three processes") {
    CHECK(sample(make_spec(ProcessKind::poisson, 2.0, 1), 0).process == ProcessKind::poisson);
    CHECK(sample(make_spec(ProcessKind::ginibre, 2.0, 1), 0).process == ProcessKind::ginibre);
    CHECK(sample(make_spec(ProcessKind::gaf, 2.0, 1), 0).process == ProcessKind::gaf);
    SamplerSpec ext = make_spec(ProcessKind::external, 2.0, 1);
    CHECK_THROWS_AS(sample(ext, 0), parameter_error);
}
