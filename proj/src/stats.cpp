#include "perc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace perc {

namespace {
constexpr double kZ95 = 1.959963984540054; // 97.5% normal quantile
}

MCEstimate MCEstimate::from_counts(long hits, long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (hits < 0 || hits > samples) throw std::invalid_argument("bad hit count");
    MCEstimate e;
    e.n_hits = hits;
    e.n_samples = samples;
    e.master_seed = seed;
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    e.p_hat = p;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    if (hits == 0) {
        e.ci_low = 0.0;
        e.ci_high = std::min(1.0, 3.0 / n);
    } else if (hits == samples) {
        e.ci_high = 1.0;
        e.ci_low = std::max(0.0, 1.0 - 3.0 / n);
    }
    return e;
}

bool ci_separated(const MCEstimate& lower, const MCEstimate& higher) {
    return lower.ci_high < higher.ci_low;
}

namespace stats {

double ks_pvalue(double statistic, double effective_n) {
    double lambda = (std::sqrt(effective_n) + 0.12 + 0.11 / std::sqrt(effective_n)) * statistic;
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12 * std::abs(sum)) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_test_pvalue(std::vector<double> sample, double (*cdf)(double)) {
    if (sample.empty()) throw std::invalid_argument("empty sample");
    std::sort(sample.begin(), sample.end());
    double d = ks_statistic_sorted(sample, cdf);
    return ks_pvalue(d, static_cast<double>(sample.size()));
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double ne = na * nb / (na + nb);
    return ks_pvalue(d, ne);
}

double exp1_cdf(double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); }

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace stats

} // namespace perc
