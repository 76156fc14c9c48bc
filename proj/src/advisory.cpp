#include "depmet/advisory.hpp"

#include "depmet/timestamp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace depmet {

using nlohmann::json;

bool is_affected(const Advisory& a, const SemVersion& v) {
    for (const auto& r : a.affected_ranges) {
        if (v < r.introduced) continue;
        if (r.fixed && !(v < *r.fixed)) continue;
        if (r.last_affected && v > *r.last_affected) continue;
        return true;
    }
    for (const auto& av : a.affected_versions)
        if (av == v) return true;
    return false;
}

bool fix_available_at(const Advisory& a, const ReleaseIndex& idx, std::int64_t t) {
    for (const auto& f : a.fixed_versions) {
        const PackageRelease* rel = idx.find_release(a.pkg, f);
        if (rel && rel->released_at <= t) return true;
    }
    return false;
}

void AdvisoryStore::add(Advisory advisory) {
    by_package_[advisory.pkg].push_back(std::move(advisory));
    ++total_;
}

std::span<const Advisory> AdvisoryStore::for_package(const PackageId& pkg) const {
    const auto it = by_package_.find(pkg);
    if (it == by_package_.end()) return {};
    return it->second;
}

std::vector<std::int64_t> AdvisoryStore::advisory_events_for(const PackageId& dep,
                                                             const ReleaseIndex& idx) const {
    std::vector<std::int64_t> out;
    for (const Advisory& a : for_package(dep)) {
        out.push_back(a.published_at);
        for (const auto& f : a.fixed_versions)
            if (const PackageRelease* rel = idx.find_release(dep, f))
                out.push_back(rel->released_at);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::optional<Ecosystem> map_osv_ecosystem(const std::string& name) {
    if (name == "npm") return Ecosystem::npm;
    if (name == "PyPI") return Ecosystem::pypi;
    if (name == "crates.io") return Ecosystem::cargo;
    return parse_ecosystem(name);
}

} // namespace

std::size_t load_osv_document(const json& doc, AdvisoryStore& store,
                              const AdvisoryWarningSink& warn) {
    const std::string id = doc.value("id", std::string("<missing-id>"));

    if (doc.contains("withdrawn") && !doc["withdrawn"].is_null()) {
        warn(id, "withdrawn advisory skipped");
        return 0;
    }
    if (!doc.contains("published") || !doc["published"].is_string()) {
        warn(id, "missing published timestamp");
        return 0;
    }
    const auto published = try_parse_timestamp(doc["published"].get<std::string>());
    if (!published) {
        warn(id, "unparseable published timestamp");
        return 0;
    }
    if (!doc.contains("affected") || !doc["affected"].is_array() || doc["affected"].empty()) {
        warn(id, "no affected entries");
        return 0;
    }

    std::size_t added = 0;
    for (const json& entry : doc["affected"]) {
        if (!entry.contains("package")) {
            warn(id, "affected entry without package");
            continue;
        }
        const json& pkg_obj = entry["package"];
        const std::string eco_name = pkg_obj.value("ecosystem", std::string());
        const auto eco = map_osv_ecosystem(eco_name);
        if (!eco) {
            warn(id, "unsupported ecosystem '" + eco_name + "'");
            continue;
        }
        const std::string name = pkg_obj.value("name", std::string());
        if (name.empty()) {
            warn(id, "affected entry without package name");
            continue;
        }

        Advisory adv;
        adv.id = id;
        adv.pkg = PackageId(*eco, name);
        adv.published_at = *published;

        if (entry.contains("ranges") && entry["ranges"].is_array()) {
            for (const json& range : entry["ranges"]) {
                const std::string type = range.value("type", std::string());
                if (type != "SEMVER" && type != "ECOSYSTEM") {
                    warn(id, "skipping range of type '" + type + "'");
                    continue;
                }
                if (!range.contains("events") || !range["events"].is_array()) {
                    warn(id, "range without events");
                    continue;
                }
                // OSV encodes a range as an event list; introduced/fixed pairs
                // appear in order and a trailing introduced stays open.
                std::vector<AdvisoryRange> parsed;
                bool bad = false;
                for (const json& ev : range["events"]) {
                    if (ev.contains("introduced")) {
                        const std::string text = ev["introduced"].get<std::string>();
                        SemVersion v;
                        if (text != "0") {
                            const auto pv = try_parse_version(eco.value(), text);
                            if (!pv) {
                                warn(id, "unparseable introduced version '" + text + "'");
                                bad = true;
                                break;
                            }
                            v = *pv;
                        }
                        parsed.push_back(AdvisoryRange{std::move(v), std::nullopt, std::nullopt});
                    } else if (ev.contains("fixed") || ev.contains("last_affected")) {
                        const bool is_fixed = ev.contains("fixed");
                        const std::string text =
                            (is_fixed ? ev["fixed"] : ev["last_affected"]).get<std::string>();
                        const auto pv = try_parse_version(eco.value(), text);
                        if (!pv) {
                            warn(id, std::string("unparseable ") +
                                         (is_fixed ? "fixed" : "last_affected") +
                                         " version '" + text + "'");
                            bad = true;
                            break;
                        }
                        if (parsed.empty()) {
                            warn(id, "range event before any introduced");
                            bad = true;
                            break;
                        }
                        if (is_fixed)
                            parsed.back().fixed = *pv;
                        else
                            parsed.back().last_affected = *pv;
                    }
                }
                if (bad) continue;
                for (auto& r : parsed) adv.affected_ranges.push_back(std::move(r));
            }
        }
        if (entry.contains("versions") && entry["versions"].is_array()) {
            for (const json& vtext : entry["versions"]) {
                const auto pv = try_parse_version(eco.value(), vtext.get<std::string>());
                if (!pv) {
                    warn(id, "unparseable affected version '" + vtext.get<std::string>() + "'");
                    continue;
                }
                adv.affected_versions.push_back(*pv);
            }
        }

        if (adv.affected_ranges.empty() && adv.affected_versions.empty()) {
            warn(id, "no usable ranges or versions");
            continue;
        }

        for (const auto& r : adv.affected_ranges)
            if (r.fixed) adv.fixed_versions.push_back(*r.fixed);
        std::sort(adv.fixed_versions.begin(), adv.fixed_versions.end());
        adv.fixed_versions.erase(
            std::unique(adv.fixed_versions.begin(), adv.fixed_versions.end()),
            adv.fixed_versions.end());

        store.add(std::move(adv));
        ++added;
    }
    return added;
}

std::size_t load_osv_text(const std::string& json_text, AdvisoryStore& store,
                          const AdvisoryWarningSink& warn) {
    json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        warn("<document>", "invalid JSON");
        return 0;
    }
    if (doc.is_array()) {
        std::size_t n = 0;
        for (const json& d : doc) n += load_osv_document(d, store, warn);
        return n;
    }
    return load_osv_document(doc, store, warn);
}

} // namespace depmet
