#pragma once

#include "depmet/advisory.hpp"
#include "depmet/package.hpp"
#include "depmet/release_index.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace depmet {

/// Requirement lookup by (from_pkg, from_version, to_pkg). Only regular
/// edges resolve; dev/optional edges are stored for bookkeeping only.
class EdgeIndex {
public:
    /// Returns false on duplicate (from, from_version, to, kind).
    bool add(DependencyEdge edge);

    std::size_t edge_count() const { return total_; }

    /// Requirement the given release declares on `to`; null when that
    /// release has no regular edge to it.
    const RequirementExpr* requirement_for(const PackageId& from, const SemVersion& from_version,
                                           const PackageId& to) const;

    /// Distinct (from, to) package pairs connected by at least one regular
    /// edge, in canonical order.
    std::vector<std::pair<PackageId, PackageId>> regular_pairs() const;

    /// Packages appearing as from_pkg of a regular edge, with the count of
    /// their distinct regular dependencies.
    std::map<PackageId, std::size_t> regular_dependency_counts() const;

    const std::vector<DependencyEdge>& edges() const { return edges_; }

private:
    struct VersionEdge {
        SemVersion from_version;
        std::size_t edge_idx;
    };
    std::vector<DependencyEdge> edges_;
    std::map<std::pair<PackageId, PackageId>, std::vector<VersionEdge>> regular_;
    std::map<std::pair<PackageId, PackageId>, std::vector<VersionEdge>> other_;
    std::size_t total_ = 0;
};

/// One stabilized interval of a (package, dependency) relation: within
/// [start, end) neither side releases and no advisory instant passes, so the
/// resolved and highest versions are constant.
struct IntervalRecord {
    PackageId from_pkg;
    SemVersion from_version;
    PackageId to_pkg;
    std::string requirement; // source text of the active requirement
    std::optional<SemVersion> resolved;
    std::optional<SemVersion> highest;
    std::int64_t start = 0;
    std::int64_t end = 0;
    bool is_out_of_date = false;
    bool is_exposed = false;
    std::optional<std::string> warning;

    double duration_days() const;

    /// Excluded from metric aggregation (the release at this instant no
    /// longer declares the dependency).
    bool dropped() const { return warning && *warning == kDroppedWarning; }

    static constexpr const char* kDroppedWarning = "dependency-dropped";
    static constexpr const char* kUnresolvableWarning = "unresolvable-requirement";
};

struct PairTimeline {
    PackageId from_pkg;
    PackageId to_pkg;
    std::vector<std::int64_t> events;
    std::vector<IntervalRecord> intervals;
};

struct TimelineOptions {
    std::int64_t cutoff = 0;
    bool include_prereleases = false;
};

/// Interval boundaries for the pair: the first regular declaration of `to`
/// by a release of `from`, every release of either side at or after it (up
/// to the cutoff), advisory publication and fix-release instants for `to`,
/// and the cutoff itself. Throws NoDeclaration.
std::vector<std::int64_t> build_event_timeline(const PackageId& from, const PackageId& to,
                                               const ReleaseIndex& idx, const EdgeIndex& edges,
                                               const AdvisoryStore& advisories,
                                               const TimelineOptions& opts);

/// false iff resolved and highest are both present and equal; an
/// unresolvable requirement counts as out of date, a dependency with no
/// available release does not.
bool flag_out_of_date(const std::optional<SemVersion>& resolved,
                      const std::optional<SemVersion>& highest);

/// Out of date, resolved version affected by an advisory published at or
/// before the interval start whose fix is already released by then.
bool flag_exposed(const IntervalRecord& record, const AdvisoryStore& advisories,
                  const ReleaseIndex& idx);

std::vector<IntervalRecord> resolve_intervals(const PackageId& from, const PackageId& to,
                                              const std::vector<std::int64_t>& events,
                                              const ReleaseIndex& idx, const EdgeIndex& edges,
                                              const AdvisoryStore& advisories,
                                              const TimelineOptions& opts);

PairTimeline build_pair_timeline(const PackageId& from, const PackageId& to,
                                 const ReleaseIndex& idx, const EdgeIndex& edges,
                                 const AdvisoryStore& advisories, const TimelineOptions& opts);

} // namespace depmet
