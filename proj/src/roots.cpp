#include "perc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace perc {

namespace {

// Initial guesses spread like the limiting root distribution of f_n:
// near-uniform over the disk of radius sqrt(n), laid on a golden-angle spiral.
std::vector<cplx> initial_guesses(int n) {
    std::vector<cplx> z(static_cast<std::size_t>(n));
    const double golden = 2.399963229728653;
    for (int i = 0; i < n; ++i) {
        double r = std::sqrt((i + 0.5));
        double a = golden * i + 0.73;
        z[static_cast<std::size_t>(i)] = std::polar(r, a);
    }
    return z;
}

} // namespace

std::vector<cplx> all_polynomial_roots(const GafPolynomial& poly,
                                       const RootFinderOptions& opt) {
    int n = poly.degree();
    if (n <= 0) return {};
    if (poly.xi.back() == cplx(0.0, 0.0))
        throw parameter_error("leading coefficient must be nonzero");
    if (n == 1) return {-poly.xi[0] / (poly.xi[1] * std::sqrt(1.0))};

    std::vector<cplx> z = initial_guesses(n);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    int remaining = n;

    for (int sweep = 0; sweep < opt.max_sweeps && remaining > 0; ++sweep) {
        for (int i = 0; i < n; ++i) {
            if (done[static_cast<std::size_t>(i)]) continue;
            cplx zi = z[static_cast<std::size_t>(i)];
            cplx nr = gaf_newton_ratio(poly, zi);
            if (!std::isfinite(nr.real()) || !std::isfinite(nr.imag())) {
                // landed on a critical point; nudge off it
                z[static_cast<std::size_t>(i)] = zi + cplx(1e-6, 1e-6) * (std::abs(zi) + 1.0);
                continue;
            }
            cplx rep{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx d = zi - z[static_cast<std::size_t>(j)];
                double dn = std::norm(d);
                if (dn == 0.0) {
                    d = cplx(1e-12, 0.0);
                    dn = 1e-24;
                }
                rep += std::conj(d) / dn;
            }
            cplx denom = 1.0 - nr * rep;
            cplx w = std::norm(denom) > 0.0 ? nr / denom : nr;
            zi -= w;
            z[static_cast<std::size_t>(i)] = zi;
            if (std::abs(w) <= opt.step_tolerance * (1.0 + std::abs(zi))) {
                done[static_cast<std::size_t>(i)] = 1;
                --remaining;
            }
        }
    }
    if (remaining > 0)
        throw reconciliation_error("aberth iteration failed to converge");

    // one Newton polish per root
    for (auto& r : z) {
        cplx nr = gaf_newton_ratio(poly, r);
        if (std::isfinite(nr.real()) && std::isfinite(nr.imag())) r -= nr;
    }
    return z;
}

long count_zeros_by_winding(const GafPolynomial& poly, const Window& region,
                            const RootFinderOptions& opt) {
    const double hw = region.half_width;
    const Vec2 c = region.center;
    const double side = 2.0 * hw;

    long prev_count = -1;
    int stable = 0;
    int per_unit = opt.contour_nodes_per_unit;
    for (int attempt = 0; attempt <= opt.max_contour_doublings; ++attempt, per_unit *= 2) {
        long m_side = std::max<long>(8, std::lround(std::ceil(side * per_unit)));
        long m = 4 * m_side;
        double sum = 0.0;
        bool degenerate = false;
        cplx prev{0.0, 0.0};
        cplx first{0.0, 0.0};
        for (long j = 0; j < m && !degenerate; ++j) {
            long s = j / m_side;      // side index, counterclockwise
            double t = static_cast<double>(j % m_side) / static_cast<double>(m_side);
            double u = -hw + side * t;
            cplx zj;
            switch (s) {
                case 0: zj = {c.x + u, c.y - hw}; break;
                case 1: zj = {c.x + hw, c.y + u}; break;
                case 2: zj = {c.x - u, c.y + hw}; break;
                default: zj = {c.x - hw, c.y - u}; break;
            }
            cplx fj = evaluate_gaf_value(poly, zj).m;
            if (fj == cplx(0.0, 0.0)) {
                degenerate = true;
                break;
            }
            if (j == 0)
                first = fj;
            else
                sum += std::arg(fj * std::conj(prev));
            prev = fj;
        }
        if (degenerate) {
            prev_count = -1;
            stable = 0;
            continue;
        }
        sum += std::arg(first * std::conj(prev));
        double turns = sum / (2.0 * std::numbers::pi);
        long count = std::lround(turns);
        bool clean = std::abs(turns - static_cast<double>(count)) < 0.25 && count >= 0;
        if (clean && count == prev_count) {
            if (++stable >= 2) return count;
        } else {
            stable = 0;
        }
        prev_count = clean ? count : -1;
    }
    throw reconciliation_error("argument-principle count did not stabilize");
}

std::vector<cplx> find_polynomial_roots(const GafPolynomial& poly, const Window& region,
                                        const RootFinderOptions& opt) {
    std::vector<cplx> inside;
    long target = count_zeros_by_winding(poly, region, opt);

    std::vector<cplx> all = all_polynomial_roots(poly, opt);
    inside.reserve(static_cast<std::size_t>(target));
    for (const auto& r : all)
        if (region.contains({r.real(), r.imag()})) inside.push_back(r);

    bool count_ok = static_cast<long>(inside.size()) == target;
    bool residual_ok = true;
    for (const auto& r : inside) {
        if (std::abs(evaluate_normalized_gaf(poly, r)) >= opt.root_tolerance) {
            residual_ok = false;
            break;
        }
    }
    if (count_ok && residual_ok) {
        std::sort(inside.begin(), inside.end(), [](const cplx& a, const cplx& b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return inside;
    }

    // retry once with a tighter iteration before giving up
    RootFinderOptions retry = opt;
    retry.step_tolerance = opt.step_tolerance * 0.1;
    retry.max_sweeps = opt.max_sweeps * 2;
    retry.contour_nodes_per_unit = opt.contour_nodes_per_unit * 4;
    all = all_polynomial_roots(poly, retry);
    long target2 = count_zeros_by_winding(poly, region, retry);
    inside.clear();
    for (const auto& r : all)
        if (region.contains({r.real(), r.imag()})) inside.push_back(r);
    for (const auto& r : inside) {
        if (std::abs(evaluate_normalized_gaf(poly, r)) >= opt.root_tolerance)
            throw reconciliation_error("root residual exceeds tolerance after retry");
    }
    if (static_cast<long>(inside.size()) != target2)
        throw reconciliation_error("root count disagrees with argument-principle count");
    std::sort(inside.begin(), inside.end(), [](const cplx& a, const cplx& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return inside;
}

} // namespace perc
