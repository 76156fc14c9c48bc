#include "depmet/requirement.hpp"

#include "depmet/errors.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace depmet {

namespace {

struct Bound {
    std::uint64_t major = 0, minor = 0, patch = 0;

    std::strong_ordering compare_triple(const SemVersion& v) const {
        if (auto c = v.major <=> major; c != 0) return c;
        if (auto c = v.minor <=> minor; c != 0) return c;
        return v.patch <=> patch;
    }
};

// First boundary above the partial's x-range: next(1.2) = 1.3.0, next(1) = 2.0.0.
Bound next_boundary(const PartialVersion& p) {
    if (!p.minor) return {*p.major + 1, 0, 0};
    return {*p.major, *p.minor + 1, 0};
}

bool below_bound(const SemVersion& v, const Bound& b) {
    return b.compare_triple(v) == std::strong_ordering::less;
}

bool in_x_range(const SemVersion& v, const PartialVersion& p) {
    if (p.empty()) return true;
    if (v.major != *p.major) return false;
    if (!p.minor) return true;
    if (v.minor != *p.minor) return false;
    if (!p.patch) return true;
    return v.patch == *p.patch;
}

bool equals_literal(const SemVersion& v, const PartialVersion& p) {
    // Full literal: triple and prerelease must both agree (build ignored).
    SemVersion lit = p.floor();
    return compare_versions(v, lit) == std::strong_ordering::equal;
}

bool exact_satisfied(const SemVersion& v, const PartialVersion& p) {
    if (p.full()) return equals_literal(v, p);
    return in_x_range(v, p);
}

Bound tilde_upper(const PartialVersion& p) {
    if (p.minor) return {*p.major, *p.minor + 1, 0};
    return {*p.major + 1, 0, 0};
}

Bound caret_upper(const PartialVersion& p) {
    if (*p.major > 0) return {*p.major + 1, 0, 0};
    if (p.minor && *p.minor > 0) return {0, *p.minor + 1, 0};
    if (p.patch) return {0, *p.minor, *p.patch + 1};
    if (p.minor) return {0, *p.minor + 1, 0};
    return {*p.major + 1, 0, 0};
}

Bound compatible_upper(const PartialVersion& p) {
    if (p.patch) return {*p.major, *p.minor + 1, 0};
    return {*p.major + 1, 0, 0};
}

bool ge_floor(const SemVersion& v, const PartialVersion& p) {
    return compare_versions(v, p.floor()) != std::strong_ordering::less;
}

} // namespace

SemVersion PartialVersion::floor() const {
    SemVersion v;
    v.major = major.value_or(0);
    v.minor = minor.value_or(0);
    v.patch = patch.value_or(0);
    v.prerelease = prerelease;
    return v;
}

bool Constraint::satisfied_by(const SemVersion& v) const {
    const PartialVersion& p = version;
    switch (op) {
    case ConstraintOp::exact:
        return exact_satisfied(v, p);
    case ConstraintOp::not_equal:
        return !exact_satisfied(v, p);
    case ConstraintOp::less:
        return compare_versions(v, p.floor()) == std::strong_ordering::less;
    case ConstraintOp::less_equal:
        if (p.full()) return compare_versions(v, p.floor()) != std::strong_ordering::greater;
        return below_bound(v, next_boundary(p));
    case ConstraintOp::greater:
        if (p.full()) return compare_versions(v, p.floor()) == std::strong_ordering::greater;
        return !below_bound(v, next_boundary(p));
    case ConstraintOp::greater_equal:
        return ge_floor(v, p);
    case ConstraintOp::tilde:
        return ge_floor(v, p) && below_bound(v, tilde_upper(p));
    case ConstraintOp::caret:
        return ge_floor(v, p) && below_bound(v, caret_upper(p));
    case ConstraintOp::compatible:
        return ge_floor(v, p) && below_bound(v, compatible_upper(p));
    case ConstraintOp::wildcard:
        return in_x_range(v, p);
    case ConstraintOp::hyphen: {
        if (!ge_floor(v, p)) return false;
        if (hyphen_upper.full())
            return compare_versions(v, hyphen_upper.floor()) != std::strong_ordering::greater;
        if (hyphen_upper.empty()) return true;
        return below_bound(v, next_boundary(hyphen_upper));
    }
    }
    return false;
}

bool matches(const RequirementExpr& req, const SemVersion& v, bool allow_prerelease) {
    for (const auto& branch : req.branches) {
        bool ok = true;
        for (const auto& c : branch) {
            if (!c.satisfied_by(v)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (v.is_prerelease() && !allow_prerelease) {
            // Prerelease opt-in: some constraint in this branch must name a
            // prerelease of the same numeric triple.
            bool opted_in = false;
            auto literal_opts_in = [&](const PartialVersion& p) {
                return !p.prerelease.empty() && p.full() && *p.major == v.major &&
                       *p.minor == v.minor && *p.patch == v.patch;
            };
            for (const auto& c : branch) {
                if (literal_opts_in(c.version) ||
                    (c.op == ConstraintOp::hyphen && literal_opts_in(c.hyphen_upper))) {
                    opted_in = true;
                    break;
                }
            }
            if (!opted_in) continue;
        }
        return true;
    }
    return false;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

bool is_wild(std::string_view s) {
    return s == "*" || s == "x" || s == "X";
}

// Parses "1", "1.2", "1.2.3", "1.2.x", "*", "1.2.3-beta.1"; wildcard
// components truncate the literal. Sets had_wildcard when one appeared.
std::optional<PartialVersion> parse_partial(std::string_view s, bool& had_wildcard) {
    had_wildcard = false;
    if (!s.empty() && (s.front() == 'v' || s.front() == 'V')) s.remove_prefix(1);
    if (s.empty()) return std::nullopt;

    PartialVersion out;
    if (is_wild(s)) {
        had_wildcard = true;
        return out;
    }

    std::string_view pre;
    const auto plus = s.find('+');
    if (plus != std::string_view::npos) s = s.substr(0, plus); // build dropped
    const auto dash = s.find('-');
    if (dash != std::string_view::npos) {
        pre = s.substr(dash + 1);
        s = s.substr(0, dash);
        if (pre.empty()) return std::nullopt;
    }

    std::optional<std::uint64_t>* slots[3] = {&out.major, &out.minor, &out.patch};
    int filled = 0;
    bool consumed_all = false;
    while (filled < 3) {
        const auto dot = s.find('.');
        const std::string_view comp = s.substr(0, dot);
        if (is_wild(comp)) {
            had_wildcard = true; // "1.x.3" truncates to "1.x"
            break;
        }
        if (!all_digits(comp)) return std::nullopt;
        std::uint64_t v = 0;
        const auto res = std::from_chars(comp.data(), comp.data() + comp.size(), v);
        if (res.ec != std::errc()) return std::nullopt;
        *slots[filled++] = v;
        if (dot == std::string_view::npos) {
            consumed_all = true;
            break;
        }
        s = s.substr(dot + 1);
        if (s.empty()) return std::nullopt;
    }
    if (filled == 0) return std::nullopt;
    if (filled == 3 && !consumed_all && !had_wildcard)
        return std::nullopt; // four or more components

    if (!pre.empty()) {
        if (filled != 3 || had_wildcard) return std::nullopt;
        while (!pre.empty()) {
            const auto dot = pre.find('.');
            const std::string_view id = pre.substr(0, dot);
            if (id.empty() || !std::all_of(id.begin(), id.end(), [](unsigned char c) {
                    return std::isalnum(c) || c == '-';
                }))
                return std::nullopt;
            out.prerelease.emplace_back(id);
            if (dot == std::string_view::npos) break;
            pre = pre.substr(dot + 1);
            if (pre.empty()) return std::nullopt;
        }
    }
    return out;
}

struct OpToken {
    ConstraintOp op;
    bool explicit_op;
};

// Longest operator prefix; "" means a bare version literal.
OpToken take_operator(std::string_view& s, Ecosystem eco) {
    auto starts = [&](std::string_view p) { return s.substr(0, p.size()) == p; };
    if (starts("~=")) {
        if (eco != Ecosystem::pypi) throw ParseError("~= is pypi-only");
        s.remove_prefix(2);
        return {ConstraintOp::compatible, true};
    }
    if (starts("!=")) {
        if (eco != Ecosystem::pypi) throw ParseError("!= is pypi-only");
        s.remove_prefix(2);
        return {ConstraintOp::not_equal, true};
    }
    if (starts("===")) throw ParseError("arbitrary equality unsupported");
    if (starts(">=")) { s.remove_prefix(2); return {ConstraintOp::greater_equal, true}; }
    if (starts("<=")) { s.remove_prefix(2); return {ConstraintOp::less_equal, true}; }
    if (starts("==")) { s.remove_prefix(2); return {ConstraintOp::exact, true}; }
    if (starts(">")) { s.remove_prefix(1); return {ConstraintOp::greater, true}; }
    if (starts("<")) { s.remove_prefix(1); return {ConstraintOp::less, true}; }
    if (starts("=")) { s.remove_prefix(1); return {ConstraintOp::exact, true}; }
    if (starts("~")) { s.remove_prefix(1); return {ConstraintOp::tilde, true}; }
    if (starts("^")) { s.remove_prefix(1); return {ConstraintOp::caret, true}; }
    switch (eco) {
    case Ecosystem::cargo: return {ConstraintOp::caret, false};
    case Ecosystem::npm:
    case Ecosystem::pypi: return {ConstraintOp::exact, false};
    }
    return {ConstraintOp::exact, false};
}

std::vector<std::string> tokenize(std::string_view branch) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : branch) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool is_bare_operator(const std::string& t) {
    return t == "=" || t == "==" || t == "<" || t == "<=" || t == ">" ||
           t == ">=" || t == "~" || t == "^" || t == "~=" || t == "!=";
}

std::vector<Constraint> parse_branch(Ecosystem eco, std::string_view branch_text) {
    std::vector<std::string> tokens = tokenize(branch_text);
    if (tokens.empty()) throw ParseError("empty constraint list");

    // Re-attach detached operators (">= 1.2.3") and fold hyphen ranges.
    std::vector<std::string> merged;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_bare_operator(tokens[i]) && i + 1 < tokens.size()) {
            merged.push_back(tokens[i] + tokens[i + 1]);
            ++i;
        } else {
            merged.push_back(tokens[i]);
        }
    }

    std::vector<Constraint> out;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (i + 2 < merged.size() && merged[i + 1] == "-") {
            bool wild_lo = false, wild_hi = false;
            auto lo = parse_partial(merged[i], wild_lo);
            auto hi = parse_partial(merged[i + 2], wild_hi);
            if (!lo || !hi) throw ParseError(fmt::format(
                "invalid hyphen range '{} - {}'", merged[i], merged[i + 2]));
            Constraint c;
            c.op = ConstraintOp::hyphen;
            c.version = *lo;
            c.hyphen_upper = *hi;
            out.push_back(std::move(c));
            i += 2;
            continue;
        }
        if (merged[i] == "-") throw ParseError("dangling hyphen");

        std::string_view rest = merged[i];
        const OpToken op = take_operator(rest, eco);
        bool wild = false;
        auto literal = parse_partial(rest, wild);
        if (!literal)
            throw ParseError(fmt::format("invalid version literal '{}'", rest));
        Constraint c;
        c.version = std::move(*literal);
        if (!op.explicit_op && wild) {
            c.op = ConstraintOp::wildcard;
        } else {
            c.op = op.op;
            if (c.op == ConstraintOp::compatible && !c.version.minor)
                throw ParseError("~= needs at least two version components");
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string render_partial(const PartialVersion& p, bool wildcard_style, Ecosystem eco) {
    if (p.empty()) return "*";
    std::string out = fmt::format("{}", *p.major);
    if (p.minor) out += fmt::format(".{}", *p.minor);
    if (p.patch) out += fmt::format(".{}", *p.patch);
    if (wildcard_style && !p.patch) {
        const char* star = eco == Ecosystem::npm ? ".x" : ".*";
        out += star;
    }
    if (!p.prerelease.empty()) {
        out.push_back('-');
        for (std::size_t i = 0; i < p.prerelease.size(); ++i) {
            if (i) out.push_back('.');
            out += p.prerelease[i];
        }
    }
    return out;
}

std::string render_constraint(const Constraint& c, Ecosystem eco) {
    switch (c.op) {
    case ConstraintOp::exact:
        if (eco == Ecosystem::pypi) return "==" + render_partial(c.version, false, eco);
        // cargo needs the explicit "=" (a bare version would re-parse as caret).
        if (eco == Ecosystem::cargo || !c.version.full())
            return "=" + render_partial(c.version, false, eco);
        return render_partial(c.version, false, eco);
    case ConstraintOp::not_equal: return "!=" + render_partial(c.version, false, eco);
    case ConstraintOp::less: return "<" + render_partial(c.version, false, eco);
    case ConstraintOp::less_equal: return "<=" + render_partial(c.version, false, eco);
    case ConstraintOp::greater: return ">" + render_partial(c.version, false, eco);
    case ConstraintOp::greater_equal: return ">=" + render_partial(c.version, false, eco);
    case ConstraintOp::tilde: return "~" + render_partial(c.version, false, eco);
    case ConstraintOp::caret: return "^" + render_partial(c.version, false, eco);
    case ConstraintOp::compatible: return "~=" + render_partial(c.version, false, eco);
    case ConstraintOp::wildcard: return render_partial(c.version, true, eco);
    case ConstraintOp::hyphen:
        return render_partial(c.version, false, eco) + " - " +
               render_partial(c.hyphen_upper, false, eco);
    }
    return {};
}

} // namespace

std::string RequirementExpr::render() const {
    std::string out;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (b) out += " || ";
        for (std::size_t i = 0; i < branches[b].size(); ++i) {
            if (i) out += ", ";
            out += render_constraint(branches[b][i], eco);
        }
    }
    return out;
}

RequirementExpr parse_requirement(Ecosystem eco, std::string_view text) {
    if (text.empty()) throw ParseError("empty requirement");

    RequirementExpr expr;
    expr.eco = eco;
    expr.source_text = std::string(text);

    std::vector<std::string_view> branch_texts;
    std::size_t start = 0;
    while (true) {
        const auto bar = text.find("||", start);
        if (bar == std::string_view::npos) {
            branch_texts.push_back(text.substr(start));
            break;
        }
        if (eco != Ecosystem::npm) throw ParseError("'||' is npm-only");
        branch_texts.push_back(text.substr(start, bar - start));
        start = bar + 2;
    }

    for (const auto& bt : branch_texts)
        expr.branches.push_back(parse_branch(eco, bt));
    return expr;
}

std::optional<RequirementExpr> try_parse_requirement(Ecosystem eco, std::string_view text) {
    try {
        return parse_requirement(eco, text);
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

} // namespace depmet
