#pragma once

#include "depmet/package.hpp"
#include "depmet/requirement.hpp"
#include "depmet/version.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace depmet {

/// Immutable after build: per-package release history sorted by version and
/// by time, with a stable-only prefix-max view for O(log n) "highest
/// available at t" queries.
class ReleaseIndex {
public:
    /// Returns false (duplicate) when (pkg, version) is already present.
    bool add(PackageRelease release);

    /// Sorts internal views; call once after the last add.
    void finalize();

    bool contains(const PackageId& pkg) const;

    /// All releases of pkg in ascending version order (empty if unknown).
    std::span<const PackageRelease> releases_by_version(const PackageId& pkg) const;

    /// All releases of pkg in ascending time order (empty if unknown).
    std::vector<const PackageRelease*> releases_by_time(const PackageId& pkg) const;

    const PackageRelease* find_release(const PackageId& pkg, const SemVersion& v) const;

    std::size_t package_count() const { return packages_.size(); }
    std::size_t release_count() const { return total_releases_; }

    /// Packages in canonical (ecosystem, name) order.
    std::vector<PackageId> package_ids() const;

    std::optional<std::int64_t> first_release_at(const PackageId& pkg) const;
    std::optional<std::int64_t> last_release_at(const PackageId& pkg) const;

    /// Latest timestamp across every release in the index.
    std::optional<std::int64_t> max_timestamp() const;

    // Resolver operations.

    /// Highest stable version released at or before t; a release exactly at
    /// t counts as available. Throws UnknownPackage. include_prereleases
    /// widens the candidate set to prerelease versions.
    std::optional<SemVersion> highest_available_at(const PackageId& dep, std::int64_t t,
                                                   bool include_prereleases = false) const;

    /// Highest version with released_at <= t satisfying req; nullopt when
    /// nothing matches. Throws UnknownPackage.
    std::optional<SemVersion> resolve_at(const RequirementExpr& req, const PackageId& dep,
                                         std::int64_t t,
                                         bool include_prereleases = false) const;

private:
    struct History {
        std::vector<PackageRelease> by_version; // ascending SEMVER
        std::vector<std::size_t> by_time;       // indices into by_version, ascending time
        // prefix_max[k]: index of the SEMVER-highest release among the first
        // k+1 releases by time; one array over stable releases, one over all.
        std::vector<std::size_t> stable_by_time;
        std::vector<std::size_t> stable_prefix_max;
        std::vector<std::size_t> all_prefix_max;
    };

    const History& history_or_throw(const PackageId& pkg) const;

    std::map<PackageId, History> packages_;
    std::size_t total_releases_ = 0;
    bool finalized_ = false;
};

} // namespace depmet
