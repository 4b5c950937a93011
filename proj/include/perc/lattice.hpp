#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perc/point_config.hpp"

namespace perc {

// Standard squares of the grid theta*Z^2: square (i,j) is
// [i*theta,(i+1)*theta] x [j*theta,(j+1)*theta]. Counts use the half-open
// convention [i*theta,(i+1)*theta) so occupancy is a partition.
//
// Distances in theta units, for integer L:
//   square (i,j) touches the shell W_{L*theta}  iff  m(i,j) <= L <= M(i,j)
//   square (i,j) lies inside the box B_{L*theta} iff  M(i,j) <= L
// where m/M are the min/max of ||.||_inf over the closed square.
//
// Connectivity conventions (fixed, and exercised against enumeration):
//   - lattice paths (k-full paths) step through 8-neighbours;
//   - empty circuits are 4-connected cycles;
//   - a 4-connected empty circuit blocks every 8-connected occupied path,
//     which is the pairing the Peierls consistency property needs.
struct OccupancyGrid {
    double theta = 1.0;
    std::int64_t i0 = 0, j0 = 0; // index of the lower-left square of the extent
    std::int64_t nx = 0, ny = 0;
    std::vector<std::int64_t> counts; // row-major: (i - i0) + nx * (j - j0)

    std::int64_t count(std::int64_t i, std::int64_t j) const {
        if (i < i0 || j < j0 || i >= i0 + nx || j >= j0 + ny) return 0;
        return counts[static_cast<std::size_t>((i - i0) + nx * (j - j0))];
    }

    std::int64_t& at(std::int64_t i, std::int64_t j) {
        return counts[static_cast<std::size_t>((i - i0) + nx * (j - j0))];
    }

    std::int64_t total() const;
    bool covers_box(std::int64_t L) const; // extent contains [-L, L-1]^2

    static OccupancyGrid make(double theta, std::int64_t i0, std::int64_t j0,
                              std::int64_t nx, std::int64_t ny);
};

struct SquareIndex {
    std::int64_t i = 0, j = 0;
    bool operator==(const SquareIndex&) const = default;
};

// min / max of ||.||_inf over the closed square, in theta units
std::int64_t square_linf_min(SquareIndex s);
std::int64_t square_linf_max(SquareIndex s);

struct LatticePath {
    std::vector<SquareIndex> squares;
    bool non_repeating = false;
    std::int64_t k_full = 0; // the k it was built for
};

bool is_valid_lattice_path(const LatticePath& path); // consecutive 8-neighbours, distinct

OccupancyGrid occupancy(const PointConfig& config, double theta);

// Non-repeating 8-connected path from one of the 4 squares whose closures
// contain the origin to a square touching W_{L*theta}, using only squares
// with count >= k. BFS, exhaustive; nullopt when no such path exists.
std::optional<LatticePath> find_k_full_lattice_path(const OccupancyGrid& grid,
                                                    std::int64_t k, std::int64_t L);

// True iff a 4-connected circuit of empty squares inside B_{L*theta}
// surrounds the origin. Dual form: the 8-connected occupied component grown
// from the occupied origin squares fails to reach the shell AND the empty set
// encloses the origin (exact plane-escape test on the 4-adjacency edges).
bool exists_empty_circuit(const OccupancyGrid& grid, std::int64_t L);

// The two halves of the dual test, exposed for the equivalence properties.
bool occupied_crossing_blocked(const OccupancyGrid& grid, std::int64_t L);
bool empty_set_encloses_origin(const OccupancyGrid& grid, std::int64_t L);

struct DiscretizationVerdict {
    bool premise_holds = false;
    bool conclusion_holds = false;
    std::optional<LatticePath> witness;

    bool counterexample() const { return premise_holds && !conclusion_holds; }
    std::string to_json() const;
};

// Proposition: with theta = r/sqrt(5), an everywhere-occupied lattice path
// from 0 to W_{L*theta} forces a continuum path from 0 to W_{L*theta}.
DiscretizationVerdict verify_discr1(const PointConfig& config, double r, std::int64_t L);

// Proposition: with r < theta/(18k), a continuum path from 0 to W_{L*theta}
// forces a k-full non-repeating lattice path from 0 to W_{L*theta}.
DiscretizationVerdict verify_discr2(const PointConfig& config, double r, double theta,
                                    std::int64_t k, std::int64_t L);

// Grid dump rows `i,j,count`.
std::string grid_csv(const OccupancyGrid& grid);

} // namespace perc
