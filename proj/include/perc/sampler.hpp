#pragma once

#include <cstdint>

#include "perc/gaf.hpp"
#include "perc/geometry.hpp"
#include "perc/ginibre.hpp"
#include "perc/point_config.hpp"
#include "perc/roots.hpp"

namespace perc {

// Finite-size truncation policy: matrix order / polynomial degree
// n = ceil((R_req + buffer)^2), R_req the circumradius of the window about
// the origin. The bulk of both finite models fills the disk of radius
// ~sqrt(n), so the window plus margin stays inside it.
struct SamplerSpec {
    ProcessKind process = ProcessKind::poisson;
    double intensity = 1.0; // poisson only, points per unit area
    Window window;
    double buffer = 5.0;
    std::uint64_t master_seed = 0;

    long derived_order() const {
        double r = window.circumradius_about_origin() + buffer;
        return static_cast<long>(std::ceil(r * r));
    }
};

PointConfig sample_poisson(const SamplerSpec& spec, std::uint64_t replica);
PointConfig sample_ginibre(const SamplerSpec& spec, std::uint64_t replica);
PointConfig sample_gaf_zeros(const SamplerSpec& spec, std::uint64_t replica);

// Dispatch on spec.process.
PointConfig sample(const SamplerSpec& spec, std::uint64_t replica);

// Coefficient draw for the truncated GAF attached to (spec, replica); the
// zeros of this polynomial inside the window are what sample_gaf_zeros
// returns.
GafPolynomial gaf_polynomial_for_replica(const SamplerSpec& spec, std::uint64_t replica);

// Count of sampler redraws forced by degenerate draws or solver
// non-convergence since process start (diagnostic only).
long sampler_redraw_count();

} // namespace perc
