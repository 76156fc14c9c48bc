#pragma once

#include "depmet/release_index.hpp"
#include "depmet/timeline.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace depmet {

/// Per-(package, dependency) totals in days: exposure never exceeds the
/// out-of-date time, which never exceeds the pair lifetime.
struct PairSummary {
    PackageId from_pkg;
    PackageId to_pkg;
    double tood_days = 0.0;
    double pfet_days = 0.0;
    double total_days = 0.0;
};

/// Per-package aggregates. The exposure fields stay absent when the package
/// never had an exposed interval; the ratio fields of both flavors are kept
/// (sum-over-sum, plus the per-dependency-normalized variant).
struct PackageMetrics {
    PackageId pkg;
    std::size_t n_deps = 0;
    double total_days = 0.0;
    double tood_days = 0.0;       // average aggregated out-of-date time
    double tood_ratio = 0.0;      // sum(tood) / sum(total), in [0, 1]
    double tood_ratio_per_dep = 0.0;
    std::optional<double> pfet_days;
    std::optional<double> pfet_ratio;
    std::optional<double> pfet_ratio_per_dep;
};

/// Sums flagged durations over one pair's interval records. "dropped"
/// records must be filtered out beforehand; records spanning more than one
/// pair throw MixedPair, an empty span throws EmptyInput.
PairSummary summarize_pair(std::span<const IntervalRecord> records);

/// (t_TOOD, ratio, ratio-per-dep) over one package's pair summaries.
struct ToodAggregate {
    double days;
    double ratio;
    double ratio_per_dep;
};
ToodAggregate package_tood(std::span<const PairSummary> summaries);

/// Exposure aggregate; absent when no pair accumulated exposure time.
std::optional<ToodAggregate> package_pfet(std::span<const PairSummary> summaries);

/// Groups summaries by from_pkg and assembles both aggregates.
std::vector<PackageMetrics> build_package_metrics(std::span<const PairSummary> summaries);

struct FilterCriteria {
    std::size_t min_versions = 5;
    double min_age_days = 30.0;
};

/// Keeps packages with enough releases, enough lifetime between first and
/// last release, and at least one regular dependency. The criteria gate the
/// measured package only; dependencies stay unrestricted.
std::vector<PackageMetrics> filter_packages(std::vector<PackageMetrics> metrics,
                                            const ReleaseIndex& idx,
                                            const FilterCriteria& criteria);

/// Signed naive baseline: importing release date minus resolved dependency
/// release date, in days. Negative under open requirements. Throws
/// Unresolvable when nothing matches at `at`, std::invalid_argument when the
/// importing release has no record.
double compute_ttu(const DependencyEdge& edge, const ReleaseIndex& idx, std::int64_t at);

} // namespace depmet
