#pragma once

#include "depmet/requirement.hpp"
#include "depmet/version.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace depmet {

/// Registry-canonical package identity. pypi names are case-insensitive with
/// `-`, `_` and `.` runs collapsed to a single `-` (PEP 503); npm and cargo
/// names are taken verbatim.
struct PackageId {
    Ecosystem eco = Ecosystem::npm;
    std::string name;

    PackageId() = default;
    PackageId(Ecosystem e, std::string_view raw_name);

    auto operator<=>(const PackageId&) const = default;

    std::string display() const;
};

std::string canonical_package_name(Ecosystem eco, std::string_view raw);

/// One (package, version, timestamp) record; an element of a package's
/// release history.
struct PackageRelease {
    PackageId pkg;
    SemVersion version;
    std::int64_t released_at = 0;
};

enum class DependencyKind { regular, dev, optional };

std::string_view to_string(DependencyKind kind);
std::optional<DependencyKind> parse_dependency_kind(std::string_view text);

/// A declared dependency of one concrete release on another package. Only
/// regular edges participate in metric computation.
struct DependencyEdge {
    PackageId from_pkg;
    SemVersion from_version;
    PackageId to_pkg;
    RequirementExpr requirement;
    DependencyKind kind = DependencyKind::regular;
};

} // namespace depmet
