#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>

#include "perc/boolean_graph.hpp"
#include "perc/rng.hpp"
#include "perc/sampler.hpp"

using namespace perc;

namespace {

PointConfig fixture(std::vector<Vec2> pts, double hw) {
    PointConfig config;
    config.window = Window(hw);
    config.points = std::move(pts);
    config.process = ProcessKind::external;
    return config;
}

PointConfig random_poisson(double hw, double intensity, std::uint64_t seed) {
    SamplerSpec spec;
    spec.process = ProcessKind::poisson;
    spec.intensity = intensity;
    spec.window = Window(hw);
    spec.master_seed = seed;
    return sample_poisson(spec, 0);
}

// exhaustive oracle for origin-to-box connectivity on tiny configs
bool origin_box_oracle(const PointConfig& config, double r, double R) {
    const auto& pts = config.points;
    std::vector<char> start(pts.size(), 0);
    std::deque<std::size_t> queue;
    std::vector<char> seen(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (norm2(pts[i]) < r) {
            queue.push_back(i);
            seen[i] = 1;
        }
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        if (dist_to_box_shell(pts[i], R) < r) return true;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (!seen[j] && dist2_sq(pts[i], pts[j]) < 4.0 * r * r) {
                seen[j] = 1;
                queue.push_back(j);
            }
    }
    return false;
}

} // namespace

TEST_CASE("two points at 1.9r are one cluster, at exactly 2r two clusters") {
    double r = 0.5;
    auto close_pair = fixture({{0.0, 0.0}, {1.9 * r, 0.0}}, 5.0);
    CHECK(build_clusters(close_pair, r).n_clusters() == 1);

    auto tied_pair = fixture({{0.0, 0.0}, {2.0 * r, 0.0}}, 5.0); // distance exactly 2r
    CHECK(build_clusters(tied_pair, r).n_clusters() == 2);
}

TEST_CASE("bucketed clustering equals brute force on random configs") {
    for (int trial = 0; trial < 100; ++trial) {
        PointConfig config = random_poisson(4.0, 1.5, 3000 + trial);
        for (double r : {0.3, 0.6, 1.2}) {
            auto fast = build_clusters(config, r);
            auto slow = build_clusters_brute_force(config, r);
            CHECK(fast.same_partition(slow));
            CHECK(fast.n_clusters() == slow.n_clusters());
        }
    }
}

TEST_CASE("origin connectivity: trivial cases") {
    auto empty = fixture({}, 5.0);
    auto labeling = build_clusters(empty, 1.0);
    CHECK_FALSE(origin_connected_to_box(labeling, empty, 3.0));

    // single point at the origin with a disk large enough to meet W_R
    auto single = fixture({{0.0, 0.0}}, 5.0);
    auto lab2 = build_clusters(single, 3.5);
    CHECK(origin_connected_to_box(lab2, single, 3.0));
    auto lab3 = build_clusters(single, 2.5);
    CHECK_FALSE(origin_connected_to_box(lab3, single, 3.0));

    CHECK_THROWS_AS(origin_connected_to_box(lab2, single, 6.0), parameter_error);
}

TEST_CASE("origin connectivity matches exhaustive search on small configs") {
    Rng rng(404);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Vec2> pts;
        int n = static_cast<int>(rng.uniform_in(0, 12));
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.uniform_in(-3, 3), rng.uniform_in(-3, 3)});
        auto config = fixture(pts, 3.0);
        double r = rng.uniform_in(0.2, 1.2);
        double R = rng.uniform_in(1.0, 3.0);
        auto labeling = build_clusters(config, r);
        CHECK(origin_connected_to_box(labeling, config, R) == origin_box_oracle(config, r, R));
    }
}

TEST_CASE("annulus crossing count") {
    // sparse subcritical config: no cluster spans
    auto sparse = fixture({{0.1, 0.1}, {3.0, 3.0}}, 4.0);
    auto lab = build_clusters(sparse, 0.3);
    CHECK(count_annulus_crossing_clusters(lab, 1.0, 3.5) == 0);

    // single chain from center to boundary
    std::vector<Vec2> chain;
    for (double x = 0.0; x <= 3.9; x += 0.4) chain.push_back({x, 0.0});
    auto chain_cfg = fixture(chain, 4.0);
    auto chain_lab = build_clusters(chain_cfg, 0.3);
    CHECK(count_annulus_crossing_clusters(chain_lab, 1.0, 3.5) == 1);

    // two parallel chains -> the diagnostic sees two crossing clusters
    std::vector<Vec2> two;
    for (double x = 0.0; x <= 3.9; x += 0.4) {
        two.push_back({x, -2.0});
        two.push_back({x, 2.0});
    }
    auto two_cfg = fixture(two, 4.0);
    auto two_lab = build_clusters(two_cfg, 0.3);
    CHECK(count_annulus_crossing_clusters(two_lab, 2.5, 3.5) == 2);

    CHECK_THROWS_AS(count_annulus_crossing_clusters(two_lab, 3.0, 2.0), parameter_error);
}

TEST_CASE("annulus crossing count agrees with a recount from memberships") {
    for (int trial = 0; trial < 100; ++trial) {
        PointConfig config = random_poisson(4.0, 1.0, 5000 + trial);
        auto labeling = build_clusters(config, 0.7);
        double R_in = 1.0, R_out = 3.0;
        long fast = count_annulus_crossing_clusters(labeling, R_in, R_out);
        std::vector<char> in(labeling.n_clusters(), 0), out(labeling.n_clusters(), 0);
        for (std::size_t i = 0; i < config.points.size(); ++i) {
            double d = norm_inf(config.points[i]);
            if (d <= R_in) in[labeling.cluster_id[i]] = 1;
            if (d >= R_out) out[labeling.cluster_id[i]] = 1;
        }
        long slow = 0;
        for (std::size_t c = 0; c < labeling.n_clusters(); ++c) slow += in[c] && out[c];
        CHECK(fast == slow);
    }
}

TEST_CASE("edge-to-edge crossing fixtures") {
    auto empty = fixture({}, 4.0);
    CHECK_FALSE(edge_to_edge_crossing(build_clusters(empty, 1.0), empty, Axis::horizontal));

    std::vector<Vec2> row;
    for (double x = -3.8; x <= 3.81; x += 0.4) row.push_back({x, 0.0});
    auto cfg = fixture(row, 4.0);
    auto lab = build_clusters(cfg, 0.3);
    CHECK(edge_to_edge_crossing(lab, cfg, Axis::horizontal));
    CHECK_FALSE(edge_to_edge_crossing(lab, cfg, Axis::vertical));
}

TEST_CASE("crossing flags are monotone in r, pathwise") {
    for (int trial = 0; trial < 1000; ++trial) {
        PointConfig config = random_poisson(3.0, 1.0, 7000 + trial);
        double r = 0.2 + 0.1 * (trial % 8);
        double r2 = r * 1.7;
        auto lab_small = build_clusters(config, r);
        auto lab_big = build_clusters(config, r2);
        bool cross_small = edge_to_edge_crossing(lab_small, config, Axis::horizontal);
        bool cross_big = edge_to_edge_crossing(lab_big, config, Axis::horizontal);
        if (cross_small) CHECK(cross_big);
    }
}

TEST_CASE("partition at r refines the partition at r' > r") {
    for (int trial = 0; trial < 50; ++trial) {
        PointConfig config = random_poisson(3.0, 1.5, 8000 + trial);
        auto fine = build_clusters(config, 0.4);
        auto coarse = build_clusters(config, 0.9);
        for (std::size_t i = 0; i < config.points.size(); ++i)
            for (std::size_t j = i + 1; j < config.points.size(); ++j)
                if (fine.cluster_id[i] == fine.cluster_id[j])
                    CHECK(coarse.cluster_id[i] == coarse.cluster_id[j]);
    }
}

TEST_CASE("perturbation stability away from distance ties") {
    Rng rng(606);
    int accepted = 0;
    for (int trial = 0; trial < 400 && accepted < 50; ++trial) {
        PointConfig config = random_poisson(2.0, 1.0, 9000 + trial);
        double r = 0.5;
        double eps = 0.008;
        // accept configs with no pairwise distance within eps of 2r
        bool ok = true;
        for (std::size_t i = 0; i < config.points.size() && ok; ++i)
            for (std::size_t j = i + 1; j < config.points.size() && ok; ++j) {
                double d = std::sqrt(dist2_sq(config.points[i], config.points[j]));
                if (std::abs(d - 2.0 * r) < eps) ok = false;
            }
        if (!ok) continue;
        ++accepted;
        auto before = build_clusters(config, r);
        PointConfig moved = config;
        for (auto& p : moved.points) {
            p.x += rng.uniform_in(-eps / 2, eps / 2) * 0.999;
            p.y += rng.uniform_in(-eps / 2, eps / 2) * 0.999;
        }
        auto after = build_clusters(moved, r);
        CHECK(before.same_partition(after));
    }
    CHECK(accepted >= 50);
}

TEST_CASE("scale covariance") {
    for (int trial = 0; trial < 50; ++trial) {
        PointConfig config = random_poisson(3.0, 1.0, 10000 + trial);
        double r = 0.5;
        auto base = build_clusters(config, r);
        bool base_cross = edge_to_edge_crossing(base, config, Axis::horizontal);
        for (double s : {2.0, 0.5}) { // powers of two scale exactly
            PointConfig scaled = config;
            scaled.window = Window(config.window.half_width * s);
            for (auto& p : scaled.points) p = s * p;
            auto lab = build_clusters(scaled, r * s);
            CHECK(base.same_partition(lab));
            CHECK(edge_to_edge_crossing(lab, scaled, Axis::horizontal) == base_cross);
        }
    }
}
