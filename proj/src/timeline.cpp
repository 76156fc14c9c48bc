#include "depmet/timeline.hpp"

#include "depmet/errors.hpp"
#include "depmet/timestamp.hpp"

#include <algorithm>

namespace depmet {

double IntervalRecord::duration_days() const {
    return seconds_to_days(end - start);
}

bool EdgeIndex::add(DependencyEdge edge) {
    auto& bucket = (edge.kind == DependencyKind::regular ? regular_ : other_);
    auto& list = bucket[{edge.from_pkg, edge.to_pkg}];
    for (const auto& e : list)
        if (e.from_version == edge.from_version &&
            edges_[e.edge_idx].kind == edge.kind)
            return false;
    list.push_back(VersionEdge{edge.from_version, edges_.size()});
    edges_.push_back(std::move(edge));
    ++total_;
    return true;
}

const RequirementExpr* EdgeIndex::requirement_for(const PackageId& from,
                                                  const SemVersion& from_version,
                                                  const PackageId& to) const {
    const auto it = regular_.find({from, to});
    if (it == regular_.end()) return nullptr;
    for (const auto& e : it->second)
        if (e.from_version == from_version) return &edges_[e.edge_idx].requirement;
    return nullptr;
}

std::vector<std::pair<PackageId, PackageId>> EdgeIndex::regular_pairs() const {
    std::vector<std::pair<PackageId, PackageId>> out;
    out.reserve(regular_.size());
    for (const auto& [pair, list] : regular_) out.push_back(pair);
    return out;
}

std::map<PackageId, std::size_t> EdgeIndex::regular_dependency_counts() const {
    std::map<PackageId, std::size_t> out;
    for (const auto& [pair, list] : regular_) ++out[pair.first];
    return out;
}

std::vector<std::int64_t> build_event_timeline(const PackageId& from, const PackageId& to,
                                               const ReleaseIndex& idx, const EdgeIndex& edges,
                                               const AdvisoryStore& advisories,
                                               const TimelineOptions& opts) {
    // T1: earliest release of `from` declaring `to` as a regular dependency.
    std::optional<std::int64_t> first;
    for (const PackageRelease* r : idx.releases_by_time(from)) {
        if (edges.requirement_for(from, r->version, to)) {
            first = r->released_at;
            break;
        }
    }
    if (!first) throw NoDeclaration(from.display(), to.display());

    std::vector<std::int64_t> events;
    events.push_back(*first);
    auto push_in_window = [&](std::int64_t t) {
        if (t >= *first && t <= opts.cutoff) events.push_back(t);
    };
    for (const PackageRelease* r : idx.releases_by_time(from)) push_in_window(r->released_at);
    for (const PackageRelease* r : idx.releases_by_time(to)) push_in_window(r->released_at);
    for (std::int64_t t : advisories.advisory_events_for(to, idx)) push_in_window(t);
    if (opts.cutoff >= *first) events.push_back(opts.cutoff);

    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    return events;
}

bool flag_out_of_date(const std::optional<SemVersion>& resolved,
                      const std::optional<SemVersion>& highest) {
    if (!highest) return false; // nothing released yet to lag behind
    if (!resolved) return true;
    return *resolved != *highest;
}

bool flag_exposed(const IntervalRecord& record, const AdvisoryStore& advisories,
                  const ReleaseIndex& idx) {
    if (!record.is_out_of_date || !record.resolved) return false;
    for (const Advisory& a : advisories.for_package(record.to_pkg)) {
        if (a.published_at > record.start) continue;
        if (!is_affected(a, *record.resolved)) continue;
        if (fix_available_at(a, idx, record.start)) return true;
    }
    return false;
}

namespace {

// SEMVER-maximum stable release of pkg at t; prerelease-only histories fall
// back to the prerelease maximum (an installer still fetches something).
const PackageRelease* importing_release_at(const ReleaseIndex& idx, const PackageId& pkg,
                                           std::int64_t t, bool include_prereleases) {
    const PackageRelease* best = nullptr;
    const PackageRelease* best_any = nullptr;
    for (const auto& r : idx.releases_by_version(pkg)) {
        if (r.released_at > t) continue;
        if (!best_any || r.version > best_any->version) best_any = &r;
        if (!include_prereleases && r.version.is_prerelease()) continue;
        if (!best || r.version > best->version) best = &r;
    }
    return best ? best : best_any;
}

} // namespace

std::vector<IntervalRecord> resolve_intervals(const PackageId& from, const PackageId& to,
                                              const std::vector<std::int64_t>& events,
                                              const ReleaseIndex& idx, const EdgeIndex& edges,
                                              const AdvisoryStore& advisories,
                                              const TimelineOptions& opts) {
    std::vector<IntervalRecord> out;
    if (events.size() < 2) return out;

    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        IntervalRecord rec;
        rec.from_pkg = from;
        rec.to_pkg = to;
        rec.start = events[k];
        rec.end = events[k + 1];

        const PackageRelease* ri =
            importing_release_at(idx, from, rec.start, opts.include_prereleases);
        if (!ri) continue; // unreachable: T1 is itself a release of `from`
        rec.from_version = ri->version;

        const RequirementExpr* req = edges.requirement_for(from, ri->version, to);
        if (!req) {
            rec.warning = IntervalRecord::kDroppedWarning;
            out.push_back(std::move(rec));
            continue;
        }
        rec.requirement = req->source_text;

        try {
            rec.resolved = idx.resolve_at(*req, to, rec.start, opts.include_prereleases);
            rec.highest = idx.highest_available_at(to, rec.start, opts.include_prereleases);
        } catch (const UnknownPackage& e) {
            rec.warning = e.what();
            out.push_back(std::move(rec));
            continue;
        }

        rec.is_out_of_date = flag_out_of_date(rec.resolved, rec.highest);
        if (!rec.resolved && rec.highest)
            rec.warning = IntervalRecord::kUnresolvableWarning;
        rec.is_exposed = flag_exposed(rec, advisories, idx);
        out.push_back(std::move(rec));
    }
    return out;
}

PairTimeline build_pair_timeline(const PackageId& from, const PackageId& to,
                                 const ReleaseIndex& idx, const EdgeIndex& edges,
                                 const AdvisoryStore& advisories, const TimelineOptions& opts) {
    PairTimeline tl;
    tl.from_pkg = from;
    tl.to_pkg = to;
    tl.events = build_event_timeline(from, to, idx, edges, advisories, opts);
    tl.intervals = resolve_intervals(from, to, tl.events, idx, edges, advisories, opts);
    return tl;
}

} // namespace depmet
