#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "perc/ginibre.hpp"
#include "perc/rng.hpp"
#include "perc/stats.hpp"

using namespace perc;

namespace {

// pooled law of independent Gamma(k,1), k = 1..n (Kostlan): the reference
// sample for the squared moduli of the n Ginibre eigenvalues
std::vector<double> kostlan_reference(int n, int replicas, Rng& rng) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * replicas);
    for (int rep = 0; rep < replicas; ++rep)
        for (int k = 1; k <= n; ++k) out.push_back(rng.gamma(static_cast<double>(k)));
    return out;
}

std::vector<double> pooled_sq_moduli(int n, int replicas, std::uint64_t seed, bool dense) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * replicas);
    for (int rep = 0; rep < replicas; ++rep) {
        Rng rng(derive_seed(seed, seed_tag::test, static_cast<std::uint64_t>(rep)));
        auto eigs = dense ? ginibre_eigenvalues_dense(n, rng)
                          : ginibre_eigenvalues_hessenberg(n, rng);
        for (const auto& w : eigs) out.push_back(std::norm(w));
    }
    return out;
}

} // namespace

TEST_CASE("n=1 is a single standard complex Gaussian draw") {
    Rng a(321), b(321);
    auto eig = ginibre_eigenvalues_dense(1, a);
    auto entry = b.complex_gaussian();
    REQUIRE(eig.size() == 1);
    CHECK(eig[0] == entry);

    Rng c(321);
    auto heig = ginibre_eigenvalues_hessenberg(1, c);
    REQUIRE(heig.size() == 1);
    CHECK(heig[0] == entry);
}

TEST_CASE("deterministic given the seed") {
    Rng a(55), b(55);
    auto e1 = ginibre_eigenvalues_hessenberg(40, a);
    auto e2 = ginibre_eigenvalues_hessenberg(40, b);
    CHECK(e1 == e2);
}

TEST_CASE("kostlan moduli law, hessenberg route") {
    // pooled |lambda|^2 over replicas vs pooled independent Gamma(k,1)
    const int n = 50, replicas = 2000; // 1e5 pooled values
    auto sample = pooled_sq_moduli(n, replicas, 1001, false);
    Rng ref_rng(2002);
    auto reference = kostlan_reference(n, replicas, ref_rng);
    double p = stats::ks_two_sample_pvalue(sample, reference);
    CHECK(p > 0.01);
}

TEST_CASE("kostlan moduli law, dense route") {
    const int n = 30, replicas = 400;
    auto sample = pooled_sq_moduli(n, replicas, 1003, true);
    Rng ref_rng(2004);
    auto reference = kostlan_reference(n, replicas, ref_rng);
    double p = stats::ks_two_sample_pvalue(sample, reference);
    CHECK(p > 0.01);
}

TEST_CASE("dense and hessenberg routes give the same eigenvalue law") {
    const int n = 30, replicas = 400;
    auto a = pooled_sq_moduli(n, replicas, 1005, true);
    auto b = pooled_sq_moduli(n, replicas, 1006, false);
    CHECK(stats::ks_two_sample_pvalue(a, b) > 0.01);

    // spectral radius moments agree too (law equality beyond moduli sets)
    double ma = 0, mb = 0;
    for (double v : a) ma = std::max(ma, v);
    for (double v : b) mb = std::max(mb, v);
    CHECK(std::sqrt(ma) == doctest::Approx(std::sqrt(mb)).epsilon(0.1));
}
