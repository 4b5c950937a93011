#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace perc {

// splitmix64; used to derive well-separated seeds from (master, tags).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable replica-seed derivation: hash of (master_seed, domain tag, replica,
// sweep). The sweep index is NOT the position in an r-sweep: estimates that
// sweep r share replica seeds (common random numbers).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t replica, std::uint64_t sweep = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= tag * 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= replica + 0xd1b54a32d192ed03ULL;
    h ^= splitmix64(s);
    s ^= sweep * 0x2545f4914f6cdd1dULL + 0x6a09e667f3bcc909ULL;
    h ^= splitmix64(s);
    return h;
}

// Tag constants for the experiment kinds / internal sampling domains.
namespace seed_tag {
inline constexpr std::uint64_t sample = 1;
inline constexpr std::uint64_t percolate = 2;
inline constexpr std::uint64_t rc = 3;
inline constexpr std::uint64_t hole = 4;
inline constexpr std::uint64_t overcrowd = 5;
inline constexpr std::uint64_t unique = 6;
inline constexpr std::uint64_t fieldmin = 7;
inline constexpr std::uint64_t discr1 = 8;
inline constexpr std::uint64_t discr2 = 9;
inline constexpr std::uint64_t test = 100;
} // namespace seed_tag

// Deterministic RNG with the few variates we need. Distributions are
// hand-rolled so streams are identical on every platform/libstdc++.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0,1)
    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    // uniform in (0,1], safe for log()
    double uniform_pos() { return ((eng_() >> 11) + 1) * 0x1.0p-53; }

    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // N(0,1) via the polar method, one spare cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double v1, v2, s;
        do {
            v1 = 2.0 * uniform() - 1.0;
            v2 = 2.0 * uniform() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * f;
        have_spare_ = true;
        return v1 * f;
    }

    // standard complex Gaussian: E|z|^2 = 1, density exp(-|z|^2)/pi
    std::complex<double> complex_gaussian() {
        double v1, v2, s;
        do {
            v1 = 2.0 * uniform() - 1.0;
            v2 = 2.0 * uniform() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-std::log(s) / s);
        return {v1 * f, v2 * f};
    }

    double exponential() { return -std::log(uniform_pos()); }

    // Poisson(mean); chunked multiplication method, exact for any mean.
    long poisson(double mean) {
        if (!(mean >= 0.0)) return 0;
        long total = 0;
        double rem = mean;
        while (rem > 0.0) {
            double chunk = rem > 25.0 ? 25.0 : rem;
            rem -= chunk;
            double limit = std::exp(-chunk);
            double prod = uniform_pos();
            long k = 0;
            while (prod > limit) {
                ++k;
                prod *= uniform_pos();
            }
            total += k;
        }
        return total;
    }

    // Gamma(shape,1), shape >= 1 (Marsaglia-Tsang).
    double gamma(double shape) {
        if (shape == 1.0) return exponential();
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = gaussian();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform_pos();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace perc
