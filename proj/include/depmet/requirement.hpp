#pragma once

#include "depmet/version.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depmet {

/// A version literal as written in a requirement: components may be missing
/// ("1.2") or wildcarded ("1.2.x" parses as the same partial). A prerelease
/// suffix is only legal on a full three-component literal.
struct PartialVersion {
    std::optional<std::uint64_t> major;
    std::optional<std::uint64_t> minor;
    std::optional<std::uint64_t> patch;
    std::vector<std::string> prerelease;

    bool full() const { return major && minor && patch; }
    bool empty() const { return !major; }

    /// Missing components filled with zero; keeps the prerelease suffix.
    SemVersion floor() const;

    friend bool operator==(const PartialVersion&, const PartialVersion&) = default;
};

enum class ConstraintOp {
    exact,       // =1.2.3, ==1.2.3, bare version (npm/pypi)
    not_equal,   // !=1.2.3 (pypi)
    less,        // <1.2.3
    less_equal,  // <=1.2.3
    greater,     // >1.2.3
    greater_equal, // >=1.2.3
    tilde,       // ~1.2.3
    caret,       // ^1.2.3, bare version (cargo)
    compatible,  // ~=1.4.5 (pypi)
    wildcard,    // *, 1.x, 1.2.*
    hyphen,      // 1.2.3 - 2.0.0
};

struct Constraint {
    ConstraintOp op = ConstraintOp::exact;
    PartialVersion version;
    PartialVersion hyphen_upper; // op == hyphen only

    friend bool operator==(const Constraint&, const Constraint&) = default;

    /// v satisfies this single constraint, prerelease gating aside.
    bool satisfied_by(const SemVersion& v) const;
};

/// Parsed dependency requirement: a disjunction of conjunctions of primitive
/// constraints. Matching is a pure predicate over SemVersion.
struct RequirementExpr {
    Ecosystem eco = Ecosystem::npm;
    std::vector<std::vector<Constraint>> branches; // OR of ANDs
    std::string source_text;

    friend bool operator==(const RequirementExpr& a, const RequirementExpr& b) {
        return a.eco == b.eco && a.branches == b.branches;
    }

    /// Canonical text the same ecosystem's grammar re-parses to this AST.
    std::string render() const;
};

/// Grammar subset per ecosystem: comparators, caret, tilde, wildcard/x-range
/// and hyphen ranges everywhere; comma or whitespace for AND; `||` OR in npm
/// only; `~=` / `!=` in pypi only; a bare version is caret in cargo and
/// exact elsewhere.
RequirementExpr parse_requirement(Ecosystem eco, std::string_view text);

std::optional<RequirementExpr> try_parse_requirement(Ecosystem eco, std::string_view text);

/// True iff v satisfies the requirement. A prerelease version only matches
/// when some constraint in the satisfied conjunction carries a prerelease
/// literal with the same (major, minor, patch) triple -- unless
/// allow_prerelease lifts that gate.
bool matches(const RequirementExpr& req, const SemVersion& v, bool allow_prerelease = false);

} // namespace depmet
