#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pamlab {

struct SampleSet {
    std::vector<double> values;
    std::string experiment_id;
    std::int64_t n = 0;
    std::uint64_t params_hash = 0;
};

void check_sample(const std::vector<double>& v);

// Exact L1 distance between empirical quantile functions.
double wasserstein1(std::vector<double> a, std::vector<double> b);

// Quantile-grid distance to N(0,1): 10^4 midpoints on [1e-4, 1-1e-4].
double wasserstein1_to_normal(std::vector<double> a, int grid = 10000, double clip = 1e-4);

// Total variation to Poisson(mean); mass above the largest observed count is one bucket.
double tv_to_poisson(const std::vector<std::uint64_t>& counts, double mean);
// Same with an explicit empirical pmf (weights sum to one) over 0..K.
double tv_to_poisson_pmf(const std::vector<double>& pmf, double mean);

struct QQPoint {
    double q;
    double sample;
    double reference;
};

std::vector<QQPoint> qq_normal(std::vector<double> a, int points = 200);
double qq_correlation(const std::vector<QQPoint>& qq);

// Empirical quantile by linear interpolation on the sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q);

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased
    double stderr_mean = 0.0;
};

Moments moments(const std::vector<double>& v);

// (v - mean)/sd with sample mean and sd.
std::vector<double> standardize_empirical(const std::vector<double>& v);

enum GrowthTerm : unsigned {
    term_log_n = 1u << 0,
    term_loglog_n = 1u << 1,
    term_log_pow = 1u << 2,   // (log n)^{1-alpha}
    term_inv_log = 1u << 3,   // 1/log n
};

struct GrowthFit {
    unsigned basis = 0;
    double log_n = 0.0;
    double loglog_n = 0.0;
    double log_pow = 0.0;
    double inv_log = 0.0;
    double intercept = 0.0;
};

// Least squares of log y on the chosen basis plus intercept.
GrowthFit fit_growth(const std::vector<double>& xs, const std::vector<double>& ys, unsigned basis, double alpha = 1.0);

// Two-sample chi-square homogeneity statistic over integer categories, merging the upper
// tail until every expected count is at least min_expected. Returns {statistic, dof}.
std::pair<double, int> chi_square_two_sample(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                             double min_expected = 5.0);
double chi_square_quantile(double p, int dof);

double normal_quantile(double p);

}  // namespace pamlab
