#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "perc/lattice.hpp"
#include "perc/sampler.hpp"
#include "perc/stats.hpp"

namespace perc {

class insufficient_data_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Region for hole / overcrowding events: an open disk at the origin or a
// connected set of standard squares (half-open point assignment, matching
// the occupancy convention).
struct RegionSpec {
    enum class Kind { disk, square_chain };
    Kind kind = Kind::disk;
    double radius = 1.0;                // disk
    double theta = 2.0;                 // chain base length
    std::vector<SquareIndex> squares;   // chain mask

    static RegionSpec disk(double R);
    // 1 x length chain, roughly centred on the origin
    static RegionSpec chain(double theta, long length);

    double required_half_width() const; // smallest window that contains it
    double area() const;
};

struct RcStep {
    double L = 0.0;
    double r = 0.0;
    MCEstimate estimate;
};

struct RcEstimate {
    double r_hat = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    double L = 0.0;            // scale the final bisection ran at
    double target_prob = 0.5;
    bool conclusive = false;
    std::vector<RcStep> steps;
};

struct DecayPoint {
    double scale = 0.0;
    MCEstimate estimate;
    bool censored = false;
};

struct DecayFit {
    std::vector<DecayPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_uncensored = 0;
};

// --- crossing / critical radius ---------------------------------------

// Per-replica crossing outcomes over an increasing r sweep with shared
// replica seeds (common random numbers): flags[replica * r_values.size() + s].
std::vector<char> crossing_outcomes(const SamplerSpec& spec, const std::vector<double>& r_values,
                                    double L, long n, std::uint64_t seed_tag,
                                    std::uint64_t sweep, unsigned threads = 1);

MCEstimate estimate_crossing_prob(const SamplerSpec& spec, double r, double L, long n,
                                  unsigned threads = 1);

RcEstimate estimate_critical_radius(const SamplerSpec& spec, const std::vector<double>& L_schedule,
                                    long n_per_step, double tol, unsigned threads = 1);

// --- hole / overcrowding ------------------------------------------------

MCEstimate estimate_hole_probability(const SamplerSpec& spec, const RegionSpec& region, long n,
                                     unsigned threads = 1);

MCEstimate estimate_overcrowding_probability(const SamplerSpec& spec, const RegionSpec& region,
                                             long k, long n, unsigned threads = 1);

// Sweeps sharing replicas across regions (common random numbers; for nested
// regions the hit indicators are pathwise monotone). spec.window must contain
// every region.
std::vector<MCEstimate> estimate_hole_curve(const SamplerSpec& spec,
                                            const std::vector<RegionSpec>& regions, long n,
                                            unsigned threads = 1);

std::vector<MCEstimate> estimate_overcrowding_curve(const SamplerSpec& spec,
                                                    const std::vector<RegionSpec>& regions,
                                                    long k, long n, unsigned threads = 1);

DecayFit fit_exponential_decay(const std::vector<std::pair<double, MCEstimate>>& pairs);

// --- uniqueness / field minimum ----------------------------------------

// For each L: fraction of replicas with >= 2 annulus-crossing clusters,
// annulus (L/4, 3L/4).
std::vector<std::pair<double, MCEstimate>> estimate_uniqueness_curve(
    const SamplerSpec& spec, double r, const std::vector<double>& L_list, long n,
    unsigned threads = 1);

// Fraction of replicas with min over the discretized circle |z| = R of |f*|
// at or below exp(-nu R^2). Contour starts at 256 nodes and doubles until the
// empirical minimum moves < 1%.
MCEstimate estimate_field_min_tail(double nu, double R, long n, std::uint64_t master_seed,
                                   double buffer = 5.0, unsigned threads = 1);

} // namespace perc
