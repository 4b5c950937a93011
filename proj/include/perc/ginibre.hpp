#pragma once

#include <complex>
#include <vector>

#include "perc/rng.hpp"

namespace perc {

// Eigenvalues of an n x n matrix with iid standard complex Gaussian entries,
// by direct dense solve (LAPACK zgeev). Reference route; O(n^3) with a large
// constant.
std::vector<std::complex<double>> ginibre_eigenvalues_dense(int n, Rng& rng);

// Same eigenvalue law via the Hessenberg form of the Ginibre matrix: under
// Householder reduction the upper triangle stays iid CN(0,1) and the k-th
// subdiagonal becomes an independent nonnegative real with square
// ~ Gamma(n-1-k, 1). Skips the reduction step inside the solver, ~3x faster.
std::vector<std::complex<double>> ginibre_eigenvalues_hessenberg(int n, Rng& rng);

} // namespace perc
