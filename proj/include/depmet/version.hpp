#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depmet {

// Which requirement grammar and defaults apply. A bare requirement version
// means caret in cargo and exact elsewhere; `||` is npm-only; `~=`/`!=` are
// pypi-only.
enum class Ecosystem { npm, pypi, cargo };

std::string_view to_string(Ecosystem eco);
std::optional<Ecosystem> parse_ecosystem(std::string_view text);

/// A normalized semantic version. Build metadata is kept for display but
/// ignored by ordering and equality, per SEMVER precedence rules.
struct SemVersion {
    std::uint64_t major = 0;
    std::uint64_t minor = 0;
    std::uint64_t patch = 0;
    std::vector<std::string> prerelease;
    std::string build;
    std::string original_text;

    bool is_prerelease() const { return !prerelease.empty(); }

    /// Canonical "major.minor.patch[-pre][+build]" form.
    std::string render() const;
};

/// SEMVER precedence: numeric triple, then prerelease (any prerelease sorts
/// before the bare release; identifiers numeric-before-alphanumeric).
std::strong_ordering compare_versions(const SemVersion& a, const SemVersion& b);

inline bool operator==(const SemVersion& a, const SemVersion& b) {
    return compare_versions(a, b) == std::strong_ordering::equal;
}
inline bool operator!=(const SemVersion& a, const SemVersion& b) { return !(a == b); }
inline bool operator<(const SemVersion& a, const SemVersion& b) {
    return compare_versions(a, b) == std::strong_ordering::less;
}
inline bool operator>(const SemVersion& a, const SemVersion& b) { return b < a; }
inline bool operator<=(const SemVersion& a, const SemVersion& b) { return !(b < a); }
inline bool operator>=(const SemVersion& a, const SemVersion& b) { return !(a < b); }

/// Parses a release version under the ecosystem's rules. npm and cargo take
/// strict SEMVER (optional leading "v"). pypi takes the PEP-440-like subset
/// with two or three numeric release components and an optional pre-release
/// segment; epoch, post, dev and local segments are rejected, and two
/// components gain patch = 0.
SemVersion parse_version(Ecosystem eco, std::string_view text);

std::optional<SemVersion> try_parse_version(Ecosystem eco, std::string_view text);

} // namespace depmet
