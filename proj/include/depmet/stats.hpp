#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace depmet {

struct SampleVector {
    std::vector<double> values;
    std::string label;
};

struct StatsConfig {
    double alpha = 0.05;
    std::size_t repetitions = 1000;
    std::vector<std::size_t> sample_sizes = {10, 50, 100, 200, 500};
    std::vector<double> max_tood_thresholds = {800, 1000, 2000, 5000};
    std::uint64_t rng_seed = 0;
};

struct DescribeResult {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample (n-1) denominator
    double min = 0.0;
    double max = 0.0;
};

/// Throws EmptyInput.
DescribeResult describe(const SampleVector& v);

struct EcdfPoint {
    double value;
    double fraction; // P(X <= value), right-continuous step height
};

std::vector<EcdfPoint> ecdf_points(const SampleVector& v);

struct QqPair {
    double p;
    double quantile_a;
    double quantile_b;
};

/// q matched empirical quantiles at p = k/(q-1), linearly interpolated
/// between order statistics. Requires q >= 2 and nonempty inputs.
std::vector<QqPair> qq_pairs(const SampleVector& a, const SampleVector& b, std::size_t q);

/// Empirical quantile with linear interpolation; sorted input.
double quantile_sorted(std::span<const double> sorted, double p);

struct CorrelationResult {
    std::optional<double> pearson;
    std::optional<double> spearman;
    std::optional<double> kendall_tau_b;
};

/// Paired samples of equal length >= 2. A constant vector makes the
/// coefficients undefined; they come back absent.
CorrelationResult correlations(const SampleVector& a, const SampleVector& b);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sided two-sample Kolmogorov-Smirnov: statistic sup|F_a - F_b|, p from
/// the asymptotic Kolmogorov distribution at effective size n*m/(n+m).
TestResult ks_two_sample(const SampleVector& a, const SampleVector& b);

/// Two-sided Mann-Whitney U (U of the first sample), normal approximation
/// with tie and continuity corrections.
TestResult mw_u(const SampleVector& a, const SampleVector& b);

/// Survival function of the asymptotic Kolmogorov distribution.
double kolmogorov_sf(double lambda);

struct SubsampleCell {
    double max_tood = 0.0;
    std::size_t sample_size = 0;
    std::string test; // "ks" or "mw"
    std::size_t repetitions_run = 0; // 0: insufficient data for this cell
    double median_p = 0.0;
    double rejection_fraction = 0.0;
};

/// The repeated-subsampling protocol: for every max-TOOD threshold and
/// sample size, draw without replacement from each vector, test, and repeat;
/// cells report the median p and the fraction rejected at alpha. Rows come
/// out keyed (threshold, sample size, test) in configuration order.
std::vector<SubsampleCell> subsample_protocol(const SampleVector& tood,
                                              const SampleVector& pfet,
                                              const StatsConfig& cfg);

struct ExponentialFit {
    double rate = 0.0; // maximum-likelihood 1/mean
    double ks_statistic = 0.0;
    double ks_gof_p = 0.0;
    std::string note; // caveat: p-value is biased because the rate was fitted
};

/// Throws EmptyInput, ZeroMean, std::invalid_argument on negative values.
ExponentialFit fit_exponential(const SampleVector& v);

} // namespace depmet
