#pragma once

#include <cstdint>
#include <vector>

namespace perc {

// Binomial estimate with a 95% Wilson interval. Zero-hit (all-hit) runs use
// the rule-of-three bound 3/n on the open side instead.
struct MCEstimate {
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    long n_samples = 0;
    long n_hits = 0;
    std::uint64_t master_seed = 0;

    static MCEstimate from_counts(long hits, long samples, std::uint64_t seed = 0);
};

bool ci_separated(const MCEstimate& lower, const MCEstimate& higher);

namespace stats {

// two-sided Kolmogorov-Smirnov asymptotic p-value, Q(lambda)=2*sum(-1)^{k-1}e^{-2k^2 l^2}
double ks_pvalue(double statistic, double effective_n);

// one-sample KS against a cdf given as a callable on sorted samples
template <typename Cdf>
double ks_statistic_sorted(const std::vector<double>& sorted, Cdf&& cdf) {
    double d = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = cdf(sorted[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, f - lo, hi - f});
    }
    return d;
}

double ks_test_pvalue(std::vector<double> sample, double (*cdf)(double));

// two-sample KS p-value
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

double exp1_cdf(double x);

// least squares y = a + b x; returns {intercept a, slope b, r_squared}
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
double sample_std(const std::vector<double>& v);

} // namespace stats

} // namespace perc
