#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "perc/gaf.hpp"
#include "perc/geometry.hpp"

namespace perc {

// Root finding failed its certification (residual or winding count); callers
// must not use partially extracted zero sets.
class reconciliation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RootFinderOptions {
    double root_tolerance = 1e-8;      // |f*(root)| bound for accepted roots
    double step_tolerance = 1e-13;     // Aberth relative step stop
    int max_sweeps = 400;
    int contour_nodes_per_unit = 64;   // argument-principle start resolution
    int max_contour_doublings = 7;     // 64 -> 8192 nodes/unit
};

// All roots of f_n (Aberth-Ehrlich on the scaled series).  Throws
// reconciliation_error if the iteration fails to converge.
std::vector<cplx> all_polynomial_roots(const GafPolynomial& poly,
                                       const RootFinderOptions& opt = {});

// Winding number of f_n along the window boundary, i.e. the number of zeros
// inside. Node count doubles until the count stabilizes twice.
long count_zeros_by_winding(const GafPolynomial& poly, const Window& region,
                            const RootFinderOptions& opt = {});

// Roots inside `region`, certified two ways: |f*(root)| < root_tolerance and
// exact agreement with the argument-principle count on the region boundary.
std::vector<cplx> find_polynomial_roots(const GafPolynomial& poly, const Window& region,
                                        const RootFinderOptions& opt = {});

} // namespace perc
