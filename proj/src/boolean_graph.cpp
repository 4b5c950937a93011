#include "perc/boolean_graph.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "perc/union_find.hpp"

namespace perc {

namespace {

ClusterLabeling labeling_from_union_find(const PointConfig& config, double r,
                                         UnionFind& uf) {
    const auto& pts = config.points;
    ClusterLabeling out;
    out.radius = r;
    out.window_half_width = config.window.half_width;
    out.cluster_id.resize(pts.size());

    std::unordered_map<std::size_t, std::uint32_t> root_to_id;
    root_to_id.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t root = uf.find(i);
        auto [it, fresh] =
            root_to_id.try_emplace(root, static_cast<std::uint32_t>(out.clusters.size()));
        if (fresh) out.clusters.emplace_back();
        std::uint32_t id = it->second;
        out.cluster_id[i] = id;

        const Vec2 p = pts[i];
        const double linf = norm_inf(p);
        const double l2 = norm2(p);
        ClusterStats& c = out.clusters[id];
        if (c.size == 0) {
            c = {1, p.x, p.x, p.y, p.y, linf, linf, l2};
        } else {
            ++c.size;
            c.min_x = std::min(c.min_x, p.x);
            c.max_x = std::max(c.max_x, p.x);
            c.min_y = std::min(c.min_y, p.y);
            c.max_y = std::max(c.max_y, p.y);
            c.min_linf = std::min(c.min_linf, linf);
            c.max_linf = std::max(c.max_linf, linf);
            c.min_l2 = std::min(c.min_l2, l2);
        }
    }
    return out;
}

} // namespace

std::size_t ClusterLabeling::largest_cluster_size() const {
    std::size_t best = 0;
    for (const auto& c : clusters) best = std::max(best, c.size);
    return best;
}

bool ClusterLabeling::same_partition(const ClusterLabeling& other) const {
    if (cluster_id.size() != other.cluster_id.size()) return false;
    // id relabeling may differ; require a consistent bijection
    std::unordered_map<std::uint32_t, std::uint32_t> fwd, bwd;
    for (std::size_t i = 0; i < cluster_id.size(); ++i) {
        auto a = cluster_id[i], b = other.cluster_id[i];
        auto [itf, newf] = fwd.try_emplace(a, b);
        if (!newf && itf->second != b) return false;
        auto [itb, newb] = bwd.try_emplace(b, a);
        if (!newb && itb->second != a) return false;
    }
    return true;
}

ClusterLabeling build_clusters(const PointConfig& config, double r) {
    if (!(r > 0.0)) throw parameter_error("radius must be > 0");
    const auto& pts = config.points;
    const double cell = 2.0 * r;
    const double reach_sq = cell * cell;

    // bucket points by cell of side 2r
    struct CellKey {
        std::int64_t key;
    };
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;
    grid.reserve(pts.size() * 2 + 1);
    auto key_of = [cell](Vec2 p) {
        auto ix = static_cast<std::int64_t>(std::floor(p.x / cell));
        auto iy = static_cast<std::int64_t>(std::floor(p.y / cell));
        return (ix << 32) ^ (iy & 0xffffffffLL);
    };
    auto key_at = [](std::int64_t ix, std::int64_t iy) {
        return (ix << 32) ^ (iy & 0xffffffffLL);
    };
    for (std::uint32_t i = 0; i < pts.size(); ++i) grid[key_of(pts[i])].push_back(i);

    UnionFind uf(pts.size());
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
        const Vec2 p = pts[i];
        auto ix = static_cast<std::int64_t>(std::floor(p.x / cell));
        auto iy = static_cast<std::int64_t>(std::floor(p.y / cell));
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(key_at(ix + dx, iy + dy));
                if (it == grid.end()) continue;
                for (std::uint32_t j : it->second) {
                    if (j <= i) continue;
                    if (dist2_sq(p, pts[j]) < reach_sq) uf.unite(i, j);
                }
            }
        }
    }
    return labeling_from_union_find(config, r, uf);
}

ClusterLabeling build_clusters_brute_force(const PointConfig& config, double r) {
    if (!(r > 0.0)) throw parameter_error("radius must be > 0");
    const auto& pts = config.points;
    const double reach_sq = 4.0 * r * r;
    UnionFind uf(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (dist2_sq(pts[i], pts[j]) < reach_sq) uf.unite(i, j);
    return labeling_from_union_find(config, r, uf);
}

bool origin_connected_to_box(const ClusterLabeling& labeling, const PointConfig& config,
                             double R) {
    if (!(R > 0.0)) throw parameter_error("R must be > 0");
    if (R > config.window.half_width)
        throw parameter_error("R exceeds window half_width: event undefined on truncated data");
    const double r = labeling.radius;
    std::vector<char> touches_origin(labeling.n_clusters(), 0);
    std::vector<char> touches_shell(labeling.n_clusters(), 0);
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        const Vec2 p = config.points[i];
        std::uint32_t id = labeling.cluster_id[i];
        if (norm2(p) < r) touches_origin[id] = 1;
        if (dist_to_box_shell(p, R) < r) touches_shell[id] = 1;
    }
    for (std::size_t id = 0; id < labeling.n_clusters(); ++id)
        if (touches_origin[id] && touches_shell[id]) return true;
    return false;
}

long count_annulus_crossing_clusters(const ClusterLabeling& labeling, double R_in,
                                     double R_out) {
    if (!(0.0 < R_in && R_in < R_out && R_out <= labeling.window_half_width))
        throw parameter_error("need 0 < R_in < R_out <= window half_width");
    long count = 0;
    for (const auto& c : labeling.clusters)
        if (c.size > 0 && c.min_linf <= R_in && c.max_linf >= R_out) ++count;
    return count;
}

bool edge_to_edge_crossing(const ClusterLabeling& labeling, const PointConfig& config,
                           Axis axis) {
    const double r = labeling.radius;
    const Window& w = config.window;
    std::vector<char> low(labeling.n_clusters(), 0), high(labeling.n_clusters(), 0);
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        const Vec2 p = config.points[i];
        std::uint32_t id = labeling.cluster_id[i];
        double coord = axis == Axis::horizontal ? p.x - w.center.x : p.y - w.center.y;
        if (coord - (-w.half_width) < r) low[id] = 1;
        if (w.half_width - coord < r) high[id] = 1;
    }
    for (std::size_t id = 0; id < labeling.n_clusters(); ++id)
        if (low[id] && high[id]) return true;
    return false;
}

std::string cluster_report_json(const ClusterLabeling& labeling, const PointConfig& config) {
    nlohmann::json j;
    j["radius"] = labeling.radius;
    j["n_points"] = labeling.n_points();
    j["n_clusters"] = labeling.n_clusters();
    j["largest_cluster_size"] = labeling.largest_cluster_size();
    j["crossing"] = {
        {"horizontal", edge_to_edge_crossing(labeling, config, Axis::horizontal)},
        {"vertical", edge_to_edge_crossing(labeling, config, Axis::vertical)}};
    return j.dump(2) + "\n";
}

} // namespace perc
