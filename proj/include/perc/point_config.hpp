#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perc/geometry.hpp"

namespace perc {

enum class ProcessKind { poisson, ginibre, gaf, external };

std::string to_string(ProcessKind k);
ProcessKind process_kind_from_string(const std::string& s);

struct SeedLineage {
    std::uint64_t master_seed = 0;
    std::uint64_t replica = 0;
};

// A finite planar configuration inside a declared window; the common
// currency of every module.
struct PointConfig {
    Window window;
    std::vector<Vec2> points;
    ProcessKind process = ProcessKind::external;
    SeedLineage seed;
    long truncation_order = 0; // matrix order / polynomial degree, 0 for poisson

    std::size_t size() const { return points.size(); }
};

// CSV with header `x,y`, one point per row, 17 significant digits.
void write_points_csv(const PointConfig& config, const std::string& path);
PointConfig read_points_csv(const std::string& path);

// Sidecar metadata {process, window, seed, replica, n}.
void write_points_metadata(const PointConfig& config, const std::string& path);

} // namespace perc
