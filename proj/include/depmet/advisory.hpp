#pragma once

#include "depmet/package.hpp"
#include "depmet/release_index.hpp"
#include "depmet/version.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace depmet {

/// introduced <= affected < fixed; last_affected is the inclusive alternative
/// some advisories use instead of fixed.
struct AdvisoryRange {
    SemVersion introduced;
    std::optional<SemVersion> fixed;
    std::optional<SemVersion> last_affected;
};

struct Advisory {
    std::string id;
    PackageId pkg;
    std::vector<AdvisoryRange> affected_ranges;
    std::vector<SemVersion> affected_versions; // explicit-list encoding
    std::vector<SemVersion> fixed_versions;    // deduplicated `fixed` events
    std::int64_t published_at = 0;
};

/// True iff v lies in an affected range or the explicit version list.
bool is_affected(const Advisory& a, const SemVersion& v);

/// True iff some fixed version of a has a release record at or before t.
bool fix_available_at(const Advisory& a, const ReleaseIndex& idx, std::int64_t t);

using AdvisoryWarningSink =
    std::function<void(const std::string& subject, const std::string& reason)>;

class AdvisoryStore {
public:
    void add(Advisory advisory);

    std::span<const Advisory> for_package(const PackageId& pkg) const;

    std::size_t advisory_count() const { return total_; }

    /// Sorted, deduplicated advisory instants relevant to dep: publication
    /// times plus release times of the advisories' fixed versions.
    std::vector<std::int64_t> advisory_events_for(const PackageId& dep,
                                                  const ReleaseIndex& idx) const;

private:
    std::map<PackageId, std::vector<Advisory>> by_package_;
    std::size_t total_ = 0;
};

/// Parses one OSV document into the store. An OSV record may affect several
/// packages; each supported (ecosystem, name) entry becomes one Advisory.
/// Malformed documents, foreign ecosystems, withdrawn advisories and
/// unparseable range events are skipped with a warning, never an abort.
/// Returns the number of Advisory entries added.
std::size_t load_osv_document(const nlohmann::json& doc, AdvisoryStore& store,
                              const AdvisoryWarningSink& warn);

std::size_t load_osv_text(const std::string& json_text, AdvisoryStore& store,
                          const AdvisoryWarningSink& warn);

} // namespace depmet
