#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "perc/roots.hpp"

using namespace perc;

namespace {

// independent root oracle: balanced companion-matrix eigenvalues (LAPACK),
// usable while sqrt(k!) stays inside double range
std::vector<cplx> companion_roots(const GafPolynomial& poly) {
    int n = poly.degree();
    std::vector<cplx> c(poly.xi.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = poly.xi[k] / std::sqrt(std::tgamma(static_cast<double>(k) + 1.0));
    std::vector<cplx> m(static_cast<std::size_t>(n) * n, cplx(0, 0));
    for (int i = 1; i < n; ++i) m[static_cast<std::size_t>(i - 1) * n + i] = 1.0; // subdiag
    for (int i = 0; i < n; ++i)
        m[static_cast<std::size_t>(n - 1) * n + i] = -c[static_cast<std::size_t>(i)] / c.back();
    std::vector<cplx> w(static_cast<std::size_t>(n));
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, m.data(), n, w.data(), nullptr, 1,
                             nullptr, 1);
    REQUIRE(info == 0);
    return w;
}

double max_match_distance(std::vector<cplx> a, std::vector<cplx> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const auto& x : a) {
        double best = 1e300;
        std::size_t arg = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            double d = std::abs(x - b[j]);
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        worst = std::max(worst, best);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(arg));
    }
    return worst;
}

} // namespace

TEST_CASE("degree 1 root") {
    Rng rng(3);
    GafPolynomial poly = draw_gaf_polynomial(1, rng);
    auto roots = all_polynomial_roots(poly);
    REQUIRE(roots.size() == 1);
    cplx expect = -poly.xi[0] / poly.xi[1];
    CHECK(std::abs(roots[0] - expect) < 1e-12 * (1 + std::abs(expect)));
}

TEST_CASE("degree 2 with zero constant coefficient") {
    Rng rng(4);
    GafPolynomial poly = draw_gaf_polynomial(2, rng);
    poly.xi[0] = {0.0, 0.0};
    auto roots = all_polynomial_roots(poly);
    REQUIRE(roots.size() == 2);
    cplx nonzero = -poly.xi[1] * std::sqrt(2.0) / poly.xi[2];
    double d0 = std::min(std::abs(roots[0]), std::abs(roots[1]));
    double d1 = std::min(std::abs(roots[0] - nonzero), std::abs(roots[1] - nonzero));
    CHECK(d0 < 1e-10);
    CHECK(d1 < 1e-10 * (1 + std::abs(nonzero)));
}

TEST_CASE("vieta sum and product identities") {
    Rng rng(11);
    for (int n : {10, 30, 60}) {
        GafPolynomial poly = draw_gaf_polynomial(n, rng);
        auto roots = all_polynomial_roots(poly);
        REQUIRE(static_cast<int>(roots.size()) == n);

        cplx sum{0, 0};
        for (const auto& r : roots) sum += r;
        cplx expect_sum = -poly.xi[static_cast<std::size_t>(n - 1)] *
                          std::sqrt(static_cast<double>(n)) / poly.xi[static_cast<std::size_t>(n)];
        CHECK(std::abs(sum - expect_sum) <= 1e-6 * (1.0 + std::abs(expect_sum)));

        cplx prod{1, 0};
        for (const auto& r : roots) prod *= r;
        double sign = n % 2 == 0 ? 1.0 : -1.0;
        cplx expect_prod = sign * poly.xi[0] *
                           std::sqrt(std::tgamma(static_cast<double>(n) + 1.0)) /
                           poly.xi[static_cast<std::size_t>(n)];
        CHECK(std::abs(prod - expect_prod) <= 1e-6 * std::abs(expect_prod));
    }
}

TEST_CASE("aberth agrees with companion-matrix eigenvalues") {
    Rng rng(12);
    for (int n : {8, 25, 60}) {
        GafPolynomial poly = draw_gaf_polynomial(n, rng);
        auto a = all_polynomial_roots(poly);
        auto b = companion_roots(poly);
        CHECK(max_match_distance(a, b) < 1e-6);
    }
}

TEST_CASE("winding count matches filtered root count") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        GafPolynomial poly = draw_gaf_polynomial(30, rng);
        Window region(rng.uniform_in(0.5, 3.0));
        long winding = count_zeros_by_winding(poly, region);
        auto all = all_polynomial_roots(poly);
        long inside = 0;
        for (const auto& r : all)
            if (region.contains({r.real(), r.imag()})) ++inside;
        CHECK(winding == inside);
    }
}

TEST_CASE("empty region gives an empty answer consistently") {
    Rng rng(14);
    GafPolynomial poly = draw_gaf_polynomial(12, rng);
    // all roots of f_12 live in ~disk of radius sqrt(12); a far-away window is empty
    Window region({60.0, 60.0}, 0.5);
    CHECK(count_zeros_by_winding(poly, region) == 0);
    CHECK(find_polynomial_roots(poly, region).empty());
}

TEST_CASE("find_polynomial_roots certifies residual and count") {
    Rng rng(15);
    RootFinderOptions opt;
    for (int trial = 0; trial < 50; ++trial) {
        GafPolynomial poly = draw_gaf_polynomial(40, rng);
        Window region(2.5);
        auto roots = find_polynomial_roots(poly, region, opt);
        long winding = count_zeros_by_winding(poly, region, opt);
        CHECK(static_cast<long>(roots.size()) == winding);
        for (const auto& r : roots) {
            CHECK(region.contains({r.real(), r.imag()}));
            CHECK(std::abs(evaluate_normalized_gaf(poly, r)) < opt.root_tolerance);
        }
    }
}

TEST_CASE("declines a zero leading coefficient") {
    Rng rng(16);
    GafPolynomial poly = draw_gaf_polynomial(5, rng);
    poly.xi.back() = {0.0, 0.0};
    CHECK_THROWS_AS(all_polynomial_roots(poly), parameter_error);
}

TEST_CASE("high degree roots still certify") {
    Rng rng(17);
    GafPolynomial poly = draw_gaf_polynomial(500, rng);
    Window region(6.0);
    auto roots = find_polynomial_roots(poly, region);
    long winding = count_zeros_by_winding(poly, region);
    CHECK(static_cast<long>(roots.size()) == winding);
    // expected count ~ area/pi = 144/pi ~ 45.8; sanity band only
    CHECK(roots.size() > 20);
    CHECK(roots.size() < 80);
    for (const auto& r : roots)
        CHECK(std::abs(evaluate_normalized_gaf(poly, r)) < 1e-8);
}
