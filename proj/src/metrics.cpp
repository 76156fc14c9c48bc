#include "depmet/metrics.hpp"

#include "depmet/errors.hpp"
#include "depmet/timestamp.hpp"

#include <fmt/core.h>

#include <algorithm>

namespace depmet {

PairSummary summarize_pair(std::span<const IntervalRecord> records) {
    if (records.empty()) throw EmptyInput("no interval records");
    PairSummary s;
    s.from_pkg = records.front().from_pkg;
    s.to_pkg = records.front().to_pkg;
    for (const auto& r : records) {
        if (r.from_pkg != s.from_pkg || r.to_pkg != s.to_pkg) throw MixedPair();
        const double d = r.duration_days();
        s.total_days += d;
        if (r.is_out_of_date) s.tood_days += d;
        if (r.is_exposed) s.pfet_days += d;
    }
    return s;
}

namespace {

ToodAggregate aggregate(std::span<const PairSummary> summaries, double PairSummary::*field) {
    double sum = 0.0, total = 0.0;
    for (const auto& s : summaries) {
        sum += s.*field;
        total += s.total_days;
    }
    const auto n = static_cast<double>(summaries.size());
    ToodAggregate out;
    out.days = sum / n;
    out.ratio = total > 0.0 ? sum / total : 0.0;
    out.ratio_per_dep = out.ratio / n;
    return out;
}

} // namespace

ToodAggregate package_tood(std::span<const PairSummary> summaries) {
    if (summaries.empty()) throw EmptyInput("no pair summaries");
    return aggregate(summaries, &PairSummary::tood_days);
}

std::optional<ToodAggregate> package_pfet(std::span<const PairSummary> summaries) {
    if (summaries.empty()) throw EmptyInput("no pair summaries");
    const bool any = std::any_of(summaries.begin(), summaries.end(),
                                 [](const PairSummary& s) { return s.pfet_days > 0.0; });
    if (!any) return std::nullopt;
    return aggregate(summaries, &PairSummary::pfet_days);
}

std::vector<PackageMetrics> build_package_metrics(std::span<const PairSummary> summaries) {
    std::map<PackageId, std::vector<PairSummary>> grouped;
    for (const auto& s : summaries) grouped[s.from_pkg].push_back(s);

    std::vector<PackageMetrics> out;
    out.reserve(grouped.size());
    for (const auto& [pkg, group] : grouped) {
        PackageMetrics m;
        m.pkg = pkg;
        m.n_deps = group.size();
        for (const auto& s : group) m.total_days += s.total_days;
        const ToodAggregate tood = package_tood(group);
        m.tood_days = tood.days;
        m.tood_ratio = tood.ratio;
        m.tood_ratio_per_dep = tood.ratio_per_dep;
        if (const auto pfet = package_pfet(group)) {
            m.pfet_days = pfet->days;
            m.pfet_ratio = pfet->ratio;
            m.pfet_ratio_per_dep = pfet->ratio_per_dep;
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<PackageMetrics> filter_packages(std::vector<PackageMetrics> metrics,
                                            const ReleaseIndex& idx,
                                            const FilterCriteria& criteria) {
    std::vector<PackageMetrics> out;
    out.reserve(metrics.size());
    for (auto& m : metrics) {
        if (m.n_deps == 0) continue;
        const auto releases = idx.releases_by_version(m.pkg);
        if (releases.size() < criteria.min_versions) continue;
        const auto first = idx.first_release_at(m.pkg);
        const auto last = idx.last_release_at(m.pkg);
        if (!first || !last) continue;
        if (seconds_to_days(*last - *first) < criteria.min_age_days) continue;
        out.push_back(std::move(m));
    }
    return out;
}

double compute_ttu(const DependencyEdge& edge, const ReleaseIndex& idx, std::int64_t at) {
    const PackageRelease* from_rel = idx.find_release(edge.from_pkg, edge.from_version);
    if (!from_rel)
        throw std::invalid_argument(fmt::format("no release record for {}@{}",
                                                edge.from_pkg.display(),
                                                edge.from_version.render()));
    const auto resolved = idx.resolve_at(edge.requirement, edge.to_pkg, at);
    if (!resolved)
        throw Unresolvable(fmt::format("'{}' matches no release of {} at {}",
                                       edge.requirement.source_text, edge.to_pkg.display(),
                                       format_timestamp(at)));
    const PackageRelease* to_rel = idx.find_release(edge.to_pkg, *resolved);
    return seconds_to_days(from_rel->released_at - to_rel->released_at);
}

} // namespace depmet
