#include "perc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include <json.hpp>

#include "perc/boolean_graph.hpp"

namespace perc {

namespace {

const SquareIndex kOriginSquares[4] = {{-1, -1}, {-1, 0}, {0, -1}, {0, 0}};

struct Rect {
    std::int64_t i0, j0, nx, ny;
    bool contains(SquareIndex s) const {
        return s.i >= i0 && s.j >= j0 && s.i < i0 + nx && s.j < j0 + ny;
    }
    std::size_t index(SquareIndex s) const {
        return static_cast<std::size_t>((s.i - i0) + nx * (s.j - j0));
    }
    std::size_t cells() const { return static_cast<std::size_t>(nx * ny); }
};

// squares whose closure meets the closed box B_{L*theta}: i,j in [-L-1, L]
Rect reach_region(std::int64_t L) { return {-L - 1, -L - 1, 2 * L + 2, 2 * L + 2}; }

// squares fully inside the closed box: i,j in [-L, L-1]
Rect inside_region(std::int64_t L) { return {-L, -L, 2 * L, 2 * L}; }

} // namespace

std::int64_t square_linf_min(SquareIndex s) {
    auto axis = [](std::int64_t i) { return std::max<std::int64_t>({0, i, -(i + 1)}); };
    return std::max(axis(s.i), axis(s.j));
}

std::int64_t square_linf_max(SquareIndex s) {
    auto axis = [](std::int64_t i) { return std::max(std::llabs(i), std::llabs(i + 1)); };
    return std::max(axis(s.i), axis(s.j));
}

std::int64_t OccupancyGrid::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

bool OccupancyGrid::covers_box(std::int64_t L) const {
    return i0 <= -L && j0 <= -L && i0 + nx >= L && j0 + ny >= L;
}

OccupancyGrid OccupancyGrid::make(double theta, std::int64_t i0, std::int64_t j0,
                                  std::int64_t nx, std::int64_t ny) {
    if (!(theta > 0.0)) throw parameter_error("theta must be > 0");
    OccupancyGrid g;
    g.theta = theta;
    g.i0 = i0;
    g.j0 = j0;
    g.nx = nx;
    g.ny = ny;
    g.counts.assign(static_cast<std::size_t>(nx * ny), 0);
    return g;
}

bool is_valid_lattice_path(const LatticePath& path) {
    const auto& sq = path.squares;
    for (std::size_t t = 1; t < sq.size(); ++t) {
        std::int64_t di = std::llabs(sq[t].i - sq[t - 1].i);
        std::int64_t dj = std::llabs(sq[t].j - sq[t - 1].j);
        if (std::max(di, dj) != 1) return false;
    }
    for (std::size_t a = 0; a < sq.size(); ++a)
        for (std::size_t b = a + 1; b < sq.size(); ++b)
            if (sq[a] == sq[b]) return false;
    return true;
}

OccupancyGrid occupancy(const PointConfig& config, double theta) {
    if (!(theta > 0.0)) throw parameter_error("theta must be > 0");
    const Window& w = config.window;
    auto lo_i = static_cast<std::int64_t>(std::floor((w.center.x - w.half_width) / theta));
    auto hi_i = static_cast<std::int64_t>(std::floor((w.center.x + w.half_width) / theta));
    auto lo_j = static_cast<std::int64_t>(std::floor((w.center.y - w.half_width) / theta));
    auto hi_j = static_cast<std::int64_t>(std::floor((w.center.y + w.half_width) / theta));
    OccupancyGrid g = OccupancyGrid::make(theta, lo_i, lo_j, hi_i - lo_i + 1, hi_j - lo_j + 1);
    for (const auto& p : config.points) {
        auto i = static_cast<std::int64_t>(std::floor(p.x / theta));
        auto j = static_cast<std::int64_t>(std::floor(p.y / theta));
        g.at(i, j) += 1;
    }
    return g;
}

std::optional<LatticePath> find_k_full_lattice_path(const OccupancyGrid& grid,
                                                    std::int64_t k, std::int64_t L) {
    if (k < 0) throw parameter_error("k must be >= 0");
    if (L < 1) throw parameter_error("L must be >= 1");

    const Rect region = reach_region(L);
    std::vector<std::int32_t> parent(region.cells(), -2); // -2 unvisited, -1 root
    std::deque<SquareIndex> queue;

    auto push = [&](SquareIndex s, std::int32_t par) {
        if (!region.contains(s)) return;
        if (square_linf_min(s) > L) return;
        std::size_t idx = region.index(s);
        if (parent[idx] != -2) return;
        if (grid.count(s.i, s.j) < k) return;
        parent[idx] = par;
        queue.push_back(s);
    };

    for (const auto& s : kOriginSquares) push(s, -1);

    while (!queue.empty()) {
        SquareIndex s = queue.front();
        queue.pop_front();
        if (square_linf_max(s) >= L) {
            LatticePath path;
            path.k_full = k;
            path.non_repeating = true;
            SquareIndex cur = s;
            for (;;) {
                path.squares.push_back(cur);
                std::int32_t par = parent[region.index(cur)];
                if (par == -1) break;
                cur = {region.i0 + par % region.nx, region.j0 + par / region.nx};
            }
            std::reverse(path.squares.begin(), path.squares.end());
            return path;
        }
        std::int32_t self = static_cast<std::int32_t>(region.index(s));
        for (std::int64_t di = -1; di <= 1; ++di)
            for (std::int64_t dj = -1; dj <= 1; ++dj)
                if (di != 0 || dj != 0) push({s.i + di, s.j + dj}, self);
    }
    return std::nullopt;
}

bool occupied_crossing_blocked(const OccupancyGrid& grid, std::int64_t L) {
    return !find_k_full_lattice_path(grid, 1, L).has_value();
}

// Exact enclosure test. Draw the 4-adjacency edges between centers of empty
// squares inside B_{L*theta} (scaled by 2 so centers sit at odd integer
// points), then flood the plane from the origin corner through unit cells;
// the flood is blocked across a cell edge iff that edge lies on a drawn
// segment. The origin fails to escape iff some bounded face of the drawn
// graph contains it, which happens iff a 4-connected cycle of empty squares
// winds around it.
bool empty_set_encloses_origin(const OccupancyGrid& grid, std::int64_t L) {
    const Rect region = inside_region(L);
    auto empty_at = [&](std::int64_t i, std::int64_t j) {
        return region.contains({i, j}) && grid.count(i, j) == 0;
    };

    // flood domain: scaled cells (u,v), u,v in [-2L-1, 2L]; escape = leaving it
    const std::int64_t lo = -2 * L - 1, hi = 2 * L;
    const std::int64_t span = hi - lo + 1;
    auto cell_idx = [&](std::int64_t u, std::int64_t v) {
        return static_cast<std::size_t>((u - lo) + span * (v - lo));
    };

    // barrier between vertically adjacent cells (u,v)-(u,v+1): shared edge on
    // a horizontal drawn segment y=2j+1, x in [2i+1, 2i+3]
    auto blocked_v = [&](std::int64_t u, std::int64_t v) {
        std::int64_t y = v + 1;
        if ((y & 1) == 0) return false;
        std::int64_t j = (y - 1) / 2;
        // u in {2i+1, 2i+2} <=> i = floor((u-1)/2)
        std::int64_t i = (u - 1) >= 0 ? (u - 1) / 2 : -(((1 - u) + 1) / 2);
        if (2 * i + 1 != u && 2 * i + 2 != u) return false;
        return empty_at(i, j) && empty_at(i + 1, j);
    };
    auto blocked_h = [&](std::int64_t u, std::int64_t v) {
        std::int64_t x = u + 1;
        if ((x & 1) == 0) return false;
        std::int64_t i = (x - 1) / 2;
        std::int64_t j = (v - 1) >= 0 ? (v - 1) / 2 : -(((1 - v) + 1) / 2);
        if (2 * j + 1 != v && 2 * j + 2 != v) return false;
        return empty_at(i, j) && empty_at(i, j + 1);
    };

    std::vector<char> seen(static_cast<std::size_t>(span * span), 0);
    std::deque<std::pair<std::int64_t, std::int64_t>> queue;
    for (auto [u, v] : {std::pair<std::int64_t, std::int64_t>{-1, -1},
                        {-1, 0},
                        {0, -1},
                        {0, 0}}) {
        seen[cell_idx(u, v)] = 1;
        queue.emplace_back(u, v);
    }
    while (!queue.empty()) {
        auto [u, v] = queue.front();
        queue.pop_front();
        if (u == lo || v == lo || u == hi || v == hi) return false; // escaped
        struct Step {
            std::int64_t du, dv;
            bool blocked;
        };
        const Step steps[4] = {{1, 0, blocked_h(u, v)},
                               {-1, 0, blocked_h(u - 1, v)},
                               {0, 1, blocked_v(u, v)},
                               {0, -1, blocked_v(u, v - 1)}};
        for (const auto& st : steps) {
            if (st.blocked) continue;
            std::int64_t nu = u + st.du, nv = v + st.dv;
            std::size_t idx = cell_idx(nu, nv);
            if (!seen[idx]) {
                seen[idx] = 1;
                queue.emplace_back(nu, nv);
            }
        }
    }
    return true;
}

bool exists_empty_circuit(const OccupancyGrid& grid, std::int64_t L) {
    if (L < 1) throw parameter_error("L must be >= 1");
    if (!grid.covers_box(L))
        throw parameter_error("grid extent does not cover B_{L*theta}");
    return occupied_crossing_blocked(grid, L) && empty_set_encloses_origin(grid, L);
}

std::string DiscretizationVerdict::to_json() const {
    nlohmann::json j;
    j["premise_holds"] = premise_holds;
    j["conclusion_holds"] = conclusion_holds;
    if (witness) {
        nlohmann::json path = nlohmann::json::array();
        for (const auto& s : witness->squares) path.push_back({s.i, s.j});
        j["witness_path"] = path;
    } else {
        j["witness_path"] = nullptr;
    }
    return j.dump();
}

DiscretizationVerdict verify_discr1(const PointConfig& config, double r, std::int64_t L) {
    if (!(r > 0.0)) throw parameter_error("r must be > 0");
    const double theta = r / std::sqrt(5.0);
    OccupancyGrid grid = occupancy(config, theta);
    DiscretizationVerdict verdict;
    auto path = find_k_full_lattice_path(grid, 1, L);
    verdict.premise_holds = path.has_value();
    verdict.witness = std::move(path);
    if (verdict.premise_holds) {
        ClusterLabeling labeling = build_clusters(config, r);
        verdict.conclusion_holds =
            origin_connected_to_box(labeling, config, static_cast<double>(L) * theta);
    }
    return verdict;
}

DiscretizationVerdict verify_discr2(const PointConfig& config, double r, double theta,
                                    std::int64_t k, std::int64_t L) {
    if (!(r > 0.0) || !(theta > 0.0)) throw parameter_error("r and theta must be > 0");
    if (k < 0) throw parameter_error("k must be >= 0");
    if (k >= 1 && !(r < theta / (18.0 * static_cast<double>(k))))
        throw parameter_error("r < theta/(18k)");
    DiscretizationVerdict verdict;
    ClusterLabeling labeling = build_clusters(config, r);
    verdict.premise_holds =
        origin_connected_to_box(labeling, config, static_cast<double>(L) * theta);
    if (verdict.premise_holds) {
        OccupancyGrid grid = occupancy(config, theta);
        auto path = find_k_full_lattice_path(grid, k, L);
        verdict.conclusion_holds = path.has_value();
        verdict.witness = std::move(path);
    }
    return verdict;
}

std::string grid_csv(const OccupancyGrid& grid) {
    std::string out = "i,j,count\n";
    for (std::int64_t j = grid.j0; j < grid.j0 + grid.ny; ++j)
        for (std::int64_t i = grid.i0; i < grid.i0 + grid.nx; ++i)
            out += std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(grid.count(i, j)) + "\n";
    return out;
}

} // namespace perc
