#include "perc/gaf.hpp"

#include <limits>
#include <mutex>

namespace perc {

namespace {

constexpr std::size_t kInvSqrtTableSize = 1 << 16;

// shared 1/sqrt(k) table; covers every degree reachable at desk scale
const double* inv_sqrt_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kInvSqrtTableSize);
        t[0] = 0.0;
        for (std::size_t k = 1; k < t.size(); ++k)
            t[k] = 1.0 / std::sqrt(static_cast<double>(k));
        return t;
    }();
    return table.data();
}

inline double inv_sqrt(std::size_t k, const double* table) {
    return k < kInvSqrtTableSize ? table[k] : 1.0 / std::sqrt(static_cast<double>(k));
}

} // namespace

GafPolynomial draw_gaf_polynomial(int degree, Rng& rng) {
    GafPolynomial poly;
    poly.xi.resize(static_cast<std::size_t>(degree) + 1);
    for (auto& c : poly.xi) c = rng.complex_gaussian();
    // xi_n = 0 has probability zero; redraw so the degree is honest
    while (poly.xi.back() == cplx(0.0, 0.0)) poly.xi.back() = rng.complex_gaussian();
    return poly;
}

// One forward pass maintaining t_k = z^k / sqrt(k!) with a shared power-of-2
// scale. d/dz [z^k/sqrt(k!)] = sqrt(k) * t_{k-1}, so the derivative
// accumulates from the previous power without dividing by z. Everything is
// rescaled together, so rescaling is exact. Past the series peak (k > |z|^2)
// the tail terms decay geometrically and the loop exits once they cannot
// affect the sums at double precision.
GafFieldValue evaluate_gaf_scaled(const GafPolynomial& poly, cplx z) {
    const auto& xi = poly.xi;
    const double* table = inv_sqrt_table();
    const double zsq = std::norm(z);
    cplx t{1.0, 0.0}, s = xi[0], d{0.0, 0.0};
    long e = 0;
    for (std::size_t k = 1; k < xi.size(); ++k) {
        double isk = inv_sqrt(k, table);
        d += xi[k] * t * (static_cast<double>(k) * isk); // sqrt(k) = k/sqrt(k)
        t *= z * isk;
        double ta = std::abs(t.real()) + std::abs(t.imag());
        if (ta > 0x1.0p+256) {
            t = {std::ldexp(t.real(), -512), std::ldexp(t.imag(), -512)};
            s = {std::ldexp(s.real(), -512), std::ldexp(s.imag(), -512)};
            d = {std::ldexp(d.real(), -512), std::ldexp(d.imag(), -512)};
            e += 512;
            ta = std::ldexp(ta, -512);
        }
        s += xi[k] * t;
        if (static_cast<double>(k) > zsq) {
            double sa = std::abs(s.real()) + std::abs(s.imag());
            if (ta == 0.0 || ta < sa * 0x1.0p-100) break;
        }
    }
    GafFieldValue out;
    out.f = {s, e};
    out.fprime = {d, e};
    return out;
}

ScaledCplx evaluate_gaf_value(const GafPolynomial& poly, cplx z) {
    const auto& xi = poly.xi;
    const double* table = inv_sqrt_table();
    const double zsq = std::norm(z);
    cplx t{1.0, 0.0}, s = xi[0];
    long e = 0;
    for (std::size_t k = 1; k < xi.size(); ++k) {
        t *= z * inv_sqrt(k, table);
        double ta = std::abs(t.real()) + std::abs(t.imag());
        if (ta > 0x1.0p+256) {
            t = {std::ldexp(t.real(), -512), std::ldexp(t.imag(), -512)};
            s = {std::ldexp(s.real(), -512), std::ldexp(s.imag(), -512)};
            e += 512;
            ta = std::ldexp(ta, -512);
        }
        s += xi[k] * t;
        if (static_cast<double>(k) > zsq) {
            double sa = std::abs(s.real()) + std::abs(s.imag());
            if (ta == 0.0 || ta < sa * 0x1.0p-100) break;
        }
    }
    return {s, e};
}

cplx evaluate_normalized_gaf(const GafPolynomial& poly, cplx z) {
    GafFieldValue v = evaluate_gaf_scaled(poly, z);
    return v.f.times_exp(-0.5 * std::norm(z));
}

cplx gaf_newton_ratio(const GafPolynomial& poly, cplx z) {
    GafFieldValue v = evaluate_gaf_scaled(poly, z);
    cplx ratio = v.f.m / v.fprime.m;
    long d = v.f.e - v.fprime.e;
    return cplx(std::ldexp(ratio.real(), static_cast<int>(d)),
                std::ldexp(ratio.imag(), static_cast<int>(d)));
}

double normalized_gaf_variance(int degree, cplx z) {
    // P(Poisson(|z|^2) <= degree), summed from the largest terms down
    double m = std::norm(z);
    if (m == 0.0) return 1.0;
    int mode = static_cast<int>(m);
    if (mode > degree) mode = degree;
    // log of Poisson pmf at mode
    double lp = -m + mode * std::log(m) - std::lgamma(mode + 1.0);
    double sum = 0.0;
    // downward from the mode
    double term = 1.0;
    for (int k = mode; k >= 0; --k) {
        sum += term;
        term *= static_cast<double>(k) / m;
        if (term < 1e-18 * sum) break;
    }
    // upward from the mode
    term = 1.0;
    for (int k = mode + 1; k <= degree; ++k) {
        term *= m / static_cast<double>(k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return std::exp(lp) * sum;
}

} // namespace perc
