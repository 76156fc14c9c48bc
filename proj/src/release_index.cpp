#include "depmet/release_index.hpp"

#include "depmet/errors.hpp"

#include <algorithm>
#include <cassert>

namespace depmet {

bool ReleaseIndex::add(PackageRelease release) {
    assert(!finalized_);
    History& h = packages_[release.pkg];
    for (const auto& r : h.by_version)
        if (r.version == release.version) return false;
    h.by_version.push_back(std::move(release));
    ++total_releases_;
    return true;
}

void ReleaseIndex::finalize() {
    for (auto& [pkg, h] : packages_) {
        std::sort(h.by_version.begin(), h.by_version.end(),
                  [](const PackageRelease& a, const PackageRelease& b) {
                      return a.version < b.version;
                  });
        h.by_time.resize(h.by_version.size());
        for (std::size_t i = 0; i < h.by_time.size(); ++i) h.by_time[i] = i;
        // Stable sort keeps version order among same-second releases.
        std::stable_sort(h.by_time.begin(), h.by_time.end(),
                         [&](std::size_t a, std::size_t b) {
                             return h.by_version[a].released_at < h.by_version[b].released_at;
                         });
        h.all_prefix_max.resize(h.by_time.size());
        std::size_t best = 0;
        for (std::size_t k = 0; k < h.by_time.size(); ++k) {
            const std::size_t idx = h.by_time[k];
            if (k == 0 || h.by_version[idx].version > h.by_version[best].version)
                best = idx;
            h.all_prefix_max[k] = best;
        }
        h.stable_by_time.clear();
        for (std::size_t idx : h.by_time)
            if (!h.by_version[idx].version.is_prerelease()) h.stable_by_time.push_back(idx);
        h.stable_prefix_max.resize(h.stable_by_time.size());
        for (std::size_t k = 0; k < h.stable_by_time.size(); ++k) {
            const std::size_t idx = h.stable_by_time[k];
            if (k == 0 || h.by_version[idx].version > h.by_version[best].version)
                best = idx;
            h.stable_prefix_max[k] = best;
        }
    }
    finalized_ = true;
}

bool ReleaseIndex::contains(const PackageId& pkg) const {
    return packages_.count(pkg) != 0;
}

std::span<const PackageRelease> ReleaseIndex::releases_by_version(const PackageId& pkg) const {
    const auto it = packages_.find(pkg);
    if (it == packages_.end()) return {};
    return it->second.by_version;
}

std::vector<const PackageRelease*> ReleaseIndex::releases_by_time(const PackageId& pkg) const {
    std::vector<const PackageRelease*> out;
    const auto it = packages_.find(pkg);
    if (it == packages_.end()) return out;
    out.reserve(it->second.by_time.size());
    for (std::size_t idx : it->second.by_time) out.push_back(&it->second.by_version[idx]);
    return out;
}

const PackageRelease* ReleaseIndex::find_release(const PackageId& pkg,
                                                 const SemVersion& v) const {
    const auto it = packages_.find(pkg);
    if (it == packages_.end()) return nullptr;
    const auto& rel = it->second.by_version;
    const auto pos = std::lower_bound(rel.begin(), rel.end(), v,
                                      [](const PackageRelease& r, const SemVersion& key) {
                                          return r.version < key;
                                      });
    if (pos == rel.end() || pos->version != v) return nullptr;
    return &*pos;
}

std::vector<PackageId> ReleaseIndex::package_ids() const {
    std::vector<PackageId> out;
    out.reserve(packages_.size());
    for (const auto& [pkg, h] : packages_) out.push_back(pkg);
    return out;
}

std::optional<std::int64_t> ReleaseIndex::first_release_at(const PackageId& pkg) const {
    const auto it = packages_.find(pkg);
    if (it == packages_.end() || it->second.by_time.empty()) return std::nullopt;
    return it->second.by_version[it->second.by_time.front()].released_at;
}

std::optional<std::int64_t> ReleaseIndex::last_release_at(const PackageId& pkg) const {
    const auto it = packages_.find(pkg);
    if (it == packages_.end() || it->second.by_time.empty()) return std::nullopt;
    return it->second.by_version[it->second.by_time.back()].released_at;
}

std::optional<std::int64_t> ReleaseIndex::max_timestamp() const {
    std::optional<std::int64_t> out;
    for (const auto& [pkg, h] : packages_)
        for (const auto& r : h.by_version)
            if (!out || r.released_at > *out) out = r.released_at;
    return out;
}

const ReleaseIndex::History& ReleaseIndex::history_or_throw(const PackageId& pkg) const {
    const auto it = packages_.find(pkg);
    if (it == packages_.end()) throw UnknownPackage(pkg.display());
    return it->second;
}

std::optional<SemVersion> ReleaseIndex::highest_available_at(const PackageId& dep,
                                                             std::int64_t t,
                                                             bool include_prereleases) const {
    const History& h = history_or_throw(dep);
    const auto& order = include_prereleases ? h.by_time : h.stable_by_time;
    const auto& prefix = include_prereleases ? h.all_prefix_max : h.stable_prefix_max;
    // Last position with released_at <= t.
    const auto pos = std::upper_bound(order.begin(), order.end(), t,
                                      [&](std::int64_t key, std::size_t idx) {
                                          return key < h.by_version[idx].released_at;
                                      });
    if (pos == order.begin()) return std::nullopt;
    const std::size_t k = static_cast<std::size_t>(pos - order.begin()) - 1;
    return h.by_version[prefix[k]].version;
}

std::optional<SemVersion> ReleaseIndex::resolve_at(const RequirementExpr& req,
                                                   const PackageId& dep, std::int64_t t,
                                                   bool include_prereleases) const {
    const History& h = history_or_throw(dep);
    for (auto it = h.by_version.rbegin(); it != h.by_version.rend(); ++it) {
        if (it->released_at > t) continue;
        if (matches(req, it->version, include_prereleases)) return it->version;
    }
    return std::nullopt;
}

} // namespace depmet
