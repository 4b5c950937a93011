#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "perc/geometry.hpp"
#include "perc/rng.hpp"

namespace perc {

using cplx = std::complex<double>;

// Complex value m * 2^e with |m| kept in a safe band; lets the power series
// sums run far past double range (|z|^2 up to ~4n).
struct ScaledCplx {
    cplx m{0.0, 0.0};
    long e = 0;

    static ScaledCplx zero() { return {}; }

    void normalize() {
        double a = std::abs(m.real()) + std::abs(m.imag());
        if (a == 0.0) {
            e = 0;
            return;
        }
        int ex = 0;
        std::frexp(a, &ex);
        if (ex > 256 || ex < -256) {
            m = {std::ldexp(m.real(), -ex), std::ldexp(m.imag(), -ex)};
            e += ex;
        }
    }

    void add(const cplx& v, long ve) {
        double a = std::abs(v.real()) + std::abs(v.imag());
        if (a == 0.0) return;
        if (std::abs(m.real()) + std::abs(m.imag()) == 0.0) {
            m = v;
            e = ve;
            return;
        }
        long d = ve - e;
        if (d >= 0) {
            if (d > 1100) {
                m = v;
                e = ve;
            } else {
                m = cplx(std::ldexp(m.real(), static_cast<int>(-d)),
                         std::ldexp(m.imag(), static_cast<int>(-d))) + v;
                e = ve;
            }
        } else {
            if (d < -1100) return;
            m += cplx(std::ldexp(v.real(), static_cast<int>(d)),
                      std::ldexp(v.imag(), static_cast<int>(d)));
        }
        normalize();
    }

    // value * exp(t), as a plain double complex; t absorbs the 2^e factor
    double log_abs() const {
        double a = std::abs(m);
        return a == 0.0 ? -std::numeric_limits<double>::infinity()
                        : std::log(a) + static_cast<double>(e) * 0.6931471805599453;
    }

    cplx times_exp(double t) const {
        double s = std::exp(t + static_cast<double>(e) * 0.6931471805599453);
        return m * s;
    }
};

// Truncated planar GAF: f_n(z) = sum_k xi_k z^k / sqrt(k!), xi_k iid standard
// complex Gaussians. Invariant: xi.size() == degree+1, xi.back() != 0.
struct GafPolynomial {
    std::vector<cplx> xi;

    int degree() const { return static_cast<int>(xi.size()) - 1; }
};

GafPolynomial draw_gaf_polynomial(int degree, Rng& rng);

// f(z) and f'(z) in scaled form (common code path for everything below).
struct GafFieldValue {
    ScaledCplx f;
    ScaledCplx fprime;
};

GafFieldValue evaluate_gaf_scaled(const GafPolynomial& poly, cplx z);

// f(z) only; roughly half the work of evaluate_gaf_scaled.
ScaledCplx evaluate_gaf_value(const GafPolynomial& poly, cplx z);

// Normalized field f*(z) = exp(-|z|^2/2) f(z); stable for |z|^2 up to ~4n.
cplx evaluate_normalized_gaf(const GafPolynomial& poly, cplx z);

// Newton ratio f(z)/f'(z) (scale-free).
cplx gaf_newton_ratio(const GafPolynomial& poly, cplx z);

// Variance of f*(z) at fixed z: exp(-|z|^2) K_n(z,z) = P(Poisson(|z|^2) <= n).
double normalized_gaf_variance(int degree, cplx z);

} // namespace perc
