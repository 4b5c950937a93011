#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "perc/point_config.hpp"

namespace perc {

// Union-find result for the Boolean/Gilbert graph at radius r: points are
// adjacent iff ||x-y||_2 < 2r (strict).
struct ClusterStats {
    std::size_t size = 0;
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    double min_linf = 0, max_linf = 0;
    double min_l2 = 0;
};

struct ClusterLabeling {
    double radius = 0.0;
    double window_half_width = 0.0;
    std::vector<std::uint32_t> cluster_id; // point index -> cluster id, 0..n_clusters-1
    std::vector<ClusterStats> clusters;

    std::size_t n_points() const { return cluster_id.size(); }
    std::size_t n_clusters() const { return clusters.size(); }
    std::size_t largest_cluster_size() const;

    // partitions compare equal when they induce the same point partition
    bool same_partition(const ClusterLabeling& other) const;
};

enum class Axis { horizontal, vertical };

// Spatial-hash construction: cell side 2r, candidate pairs from the 3x3 cell
// neighbourhood. Identical partition to the all-pairs construction.
ClusterLabeling build_clusters(const PointConfig& config, double r);

// All-pairs reference construction (oracle; O(n^2)).
ClusterLabeling build_clusters_brute_force(const PointConfig& config, double r);

// True iff one cluster holds a point x0 with ||x0||_2 < r and a point y whose
// open disk B(y;r) meets the shell W_R = {||x||_inf = R}.
bool origin_connected_to_box(const ClusterLabeling& labeling, const PointConfig& config,
                             double R);

// Number of distinct clusters with a point at ||x||_inf <= R_in and a point
// at ||x||_inf >= R_out.
long count_annulus_crossing_clusters(const ClusterLabeling& labeling, double R_in,
                                     double R_out);

// True iff some cluster has points within r of both the low and the high
// window edge along `axis`.
bool edge_to_edge_crossing(const ClusterLabeling& labeling, const PointConfig& config,
                           Axis axis);

// Cluster report JSON for the CLI.
std::string cluster_report_json(const ClusterLabeling& labeling, const PointConfig& config);

} // namespace perc
