#include "perc/ginibre.hpp"

#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace perc {

namespace {

using lcplx = lapack_complex_double;

lcplx* lp(std::complex<double>* p) { return reinterpret_cast<lcplx*>(p); }

struct BlasThreadPin {
    BlasThreadPin();
};

// Replicas run in parallel; BLAS threading on top of that only hurts.
extern "C" void openblas_set_num_threads(int);

BlasThreadPin::BlasThreadPin() { openblas_set_num_threads(1); }

const BlasThreadPin pin_once{};

} // namespace

std::vector<std::complex<double>> ginibre_eigenvalues_dense(int n, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("matrix order must be positive");
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n) * n);
    for (auto& x : a) x = rng.complex_gaussian();
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lp(a.data()), n,
                             lp(w.data()), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("zgeev failed, info=" + std::to_string(info));
    return w;
}

std::vector<std::complex<double>> ginibre_eigenvalues_hessenberg(int n, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("matrix order must be positive");
    std::vector<std::complex<double>> h(static_cast<std::size_t>(n) * n,
                                        std::complex<double>(0.0, 0.0));
    // column-major; h[i + j*n]
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i)
            h[static_cast<std::size_t>(j) * n + i] = rng.complex_gaussian();
    for (int k = 0; k + 1 < n; ++k) {
        double g = rng.gamma(static_cast<double>(n - 1 - k));
        h[static_cast<std::size_t>(k) * n + (k + 1)] = std::sqrt(g);
    }
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    if (n == 1) {
        w[0] = h[0];
        return w;
    }
    int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, lp(h.data()), n,
                              lp(w.data()), nullptr, 1);
    if (info != 0) throw std::runtime_error("zhseqr failed, info=" + std::to_string(info));
    return w;
}

} // namespace perc
