#include "depmet/version.hpp"

#include "depmet/errors.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace depmet {

std::string_view to_string(Ecosystem eco) {
    switch (eco) {
    case Ecosystem::npm: return "npm";
    case Ecosystem::pypi: return "pypi";
    case Ecosystem::cargo: return "cargo";
    }
    return "?";
}

std::optional<Ecosystem> parse_ecosystem(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "npm") return Ecosystem::npm;
    if (lower == "pypi") return Ecosystem::pypi;
    if (lower == "cargo" || lower == "crates.io") return Ecosystem::cargo;
    return std::nullopt;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

// Prerelease identifier precedence: numeric identifiers compare numerically
// and sort before alphanumeric ones; alphanumeric compare by ASCII.
std::strong_ordering compare_identifier(const std::string& a, const std::string& b) {
    const bool an = all_digits(a);
    const bool bn = all_digits(b);
    if (an && bn) {
        // Compare by length first to avoid overflow on absurd identifiers.
        if (a.size() != b.size()) {
            // Leading zeros are kept (tolerated on ingest); strip for the
            // numeric comparison so "01" == "1" numerically, then fall back
            // to the string to keep the order total.
            const auto sa = a.find_first_not_of('0');
            const auto sb = b.find_first_not_of('0');
            std::string_view va = sa == std::string::npos ? "0" : std::string_view(a).substr(sa);
            std::string_view vb = sb == std::string::npos ? "0" : std::string_view(b).substr(sb);
            if (va.size() != vb.size()) return va.size() <=> vb.size();
            if (auto c = va.compare(vb); c != 0) return c <=> 0;
            return a.compare(b) <=> 0;
        }
        if (auto c = a.compare(b); c != 0) return c <=> 0;
        return std::strong_ordering::equal;
    }
    if (an != bn) return an ? std::strong_ordering::less : std::strong_ordering::greater;
    const int c = a.compare(b);
    return c <=> 0;
}

std::optional<std::uint64_t> parse_numeric_component(std::string_view s, bool allow_leading_zero) {
    if (s.empty() || !all_digits(s)) return std::nullopt;
    if (!allow_leading_zero && s.size() > 1 && s[0] == '0') return std::nullopt;
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool valid_semver_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '-';
    });
}

std::optional<SemVersion> parse_semver(std::string_view text) {
    std::string_view s = text;
    if (!s.empty() && (s.front() == 'v' || s.front() == 'V')) s.remove_prefix(1);
    if (s.empty()) return std::nullopt;

    SemVersion out;
    out.original_text = std::string(text);

    const auto plus = s.find('+');
    if (plus != std::string_view::npos) {
        out.build = std::string(s.substr(plus + 1));
        if (out.build.empty()) return std::nullopt;
        s = s.substr(0, plus);
    }
    const auto dash = s.find('-');
    std::string_view pre;
    if (dash != std::string_view::npos) {
        pre = s.substr(dash + 1);
        s = s.substr(0, dash);
        if (pre.empty()) return std::nullopt;
    }

    std::uint64_t nums[3];
    for (int i = 0; i < 3; ++i) {
        const auto dot = s.find('.');
        const std::string_view comp = i < 2 ? s.substr(0, dot) : s;
        if (i < 2) {
            if (dot == std::string_view::npos) return std::nullopt;
            s = s.substr(dot + 1);
        } else if (dot != std::string_view::npos) {
            return std::nullopt;
        }
        const auto v = parse_numeric_component(comp, /*allow_leading_zero=*/false);
        if (!v) return std::nullopt;
        nums[i] = *v;
    }
    out.major = nums[0];
    out.minor = nums[1];
    out.patch = nums[2];

    while (!pre.empty()) {
        const auto dot = pre.find('.');
        const std::string_view id = pre.substr(0, dot);
        if (!valid_semver_identifier(id)) return std::nullopt;
        out.prerelease.emplace_back(id);
        if (dot == std::string_view::npos) break;
        pre = pre.substr(dot + 1);
        if (pre.empty()) return std::nullopt;
    }
    return out;
}

// PEP-440-like subset: [v]N(.N){1,2} with an optional pre-release segment.
// Epoch ("1!"), post ("1.0.post1"), dev ("1.0.dev2") and local ("1.0+x")
// segments fall outside the normalizable subset and are rejected.
std::optional<SemVersion> parse_pypi(std::string_view text) {
    std::string lower;
    lower.reserve(text.size());
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    std::string_view s = lower;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == 'v') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    if (s.find('!') != std::string_view::npos) return std::nullopt; // epoch
    if (s.find('+') != std::string_view::npos) return std::nullopt; // local

    SemVersion out;
    out.original_text = std::string(text);

    // Release components.
    std::vector<std::uint64_t> release;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end == pos) break;
        const auto v = parse_numeric_component(s.substr(pos, end - pos), /*allow_leading_zero=*/true);
        if (!v) return std::nullopt;
        release.push_back(*v);
        pos = end;
        if (pos < s.size() && s[pos] == '.' && pos + 1 < s.size() &&
            std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
            ++pos;
            continue;
        }
        break;
    }
    if (release.size() != 2 && release.size() != 3) return std::nullopt;
    out.major = release[0];
    out.minor = release[1];
    out.patch = release.size() == 3 ? release[2] : 0;
    if (pos == s.size()) return out;

    // Optional pre-release segment, e.g. "rc1", ".alpha2", "-b3", "-rc.1".
    std::string_view rest = s.substr(pos);
    if (rest.front() == '.' || rest.front() == '-' || rest.front() == '_')
        rest.remove_prefix(1);
    if (rest.empty()) return std::nullopt;

    std::size_t tag_end = 0;
    while (tag_end < rest.size() && std::isalpha(static_cast<unsigned char>(rest[tag_end])))
        ++tag_end;
    std::string tag(rest.substr(0, tag_end));
    rest.remove_prefix(tag_end);

    std::string norm;
    if (tag == "a" || tag == "alpha") norm = "a";
    else if (tag == "b" || tag == "beta") norm = "b";
    else if (tag == "rc" || tag == "c" || tag == "pre" || tag == "preview") norm = "rc";
    else if (tag == "post" || tag == "dev" || tag == "r" || tag == "rev") return std::nullopt;
    else return std::nullopt;
    out.prerelease.push_back(norm);

    if (!rest.empty()) {
        if (rest.front() == '.' || rest.front() == '-' || rest.front() == '_')
            rest.remove_prefix(1);
        if (rest.empty() || !all_digits(rest)) return std::nullopt;
        const auto n = parse_numeric_component(rest, /*allow_leading_zero=*/true);
        if (!n) return std::nullopt;
        out.prerelease.push_back(fmt::format("{}", *n));
    } else {
        out.prerelease.push_back("0");
    }
    return out;
}

// pypi also accepts the canonical SEMVER rendering so render/parse round-trips.
std::optional<SemVersion> parse_pypi_or_semver(std::string_view text) {
    if (auto v = parse_pypi(text)) return v;
    auto v = parse_semver(text);
    if (!v) return std::nullopt;
    // Normalize known PEP-440 tags so "1.0.0-beta.2" and "1.0.0b2" agree.
    if (!v->prerelease.empty()) {
        std::string& tag = v->prerelease.front();
        if (tag == "alpha") tag = "a";
        else if (tag == "beta") tag = "b";
        else if (tag == "c" || tag == "pre" || tag == "preview") tag = "rc";
    }
    return v;
}

} // namespace

std::strong_ordering compare_versions(const SemVersion& a, const SemVersion& b) {
    if (auto c = a.major <=> b.major; c != 0) return c;
    if (auto c = a.minor <=> b.minor; c != 0) return c;
    if (auto c = a.patch <=> b.patch; c != 0) return c;
    if (a.prerelease.empty() != b.prerelease.empty())
        return a.prerelease.empty() ? std::strong_ordering::greater
                                    : std::strong_ordering::less;
    const std::size_t n = std::min(a.prerelease.size(), b.prerelease.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare_identifier(a.prerelease[i], b.prerelease[i]); c != 0)
            return c;
    }
    return a.prerelease.size() <=> b.prerelease.size();
}

std::string SemVersion::render() const {
    std::string out = fmt::format("{}.{}.{}", major, minor, patch);
    if (!prerelease.empty()) {
        out.push_back('-');
        for (std::size_t i = 0; i < prerelease.size(); ++i) {
            if (i) out.push_back('.');
            out += prerelease[i];
        }
    }
    if (!build.empty()) {
        out.push_back('+');
        out += build;
    }
    return out;
}

std::optional<SemVersion> try_parse_version(Ecosystem eco, std::string_view text) {
    if (text.empty()) return std::nullopt;
    switch (eco) {
    case Ecosystem::npm:
    case Ecosystem::cargo:
        return parse_semver(text);
    case Ecosystem::pypi:
        return parse_pypi_or_semver(text);
    }
    return std::nullopt;
}

SemVersion parse_version(Ecosystem eco, std::string_view text) {
    if (text.empty()) throw ParseError("empty version");
    if (auto v = try_parse_version(eco, text)) return *v;
    throw ParseError(fmt::format("unsupported {} version '{}'", to_string(eco), text));
}

} // namespace depmet
