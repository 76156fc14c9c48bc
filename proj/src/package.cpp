#include "depmet/package.hpp"

#include <cctype>

namespace depmet {

std::string canonical_package_name(Ecosystem eco, std::string_view raw) {
    if (eco != Ecosystem::pypi) return std::string(raw);
    // PEP 503: lowercase, runs of [-_.] collapse to a single '-'.
    std::string out;
    out.reserve(raw.size());
    bool pending_sep = false;
    for (char c : raw) {
        if (c == '-' || c == '_' || c == '.') {
            pending_sep = !out.empty();
            continue;
        }
        if (pending_sep) {
            out.push_back('-');
            pending_sep = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

PackageId::PackageId(Ecosystem e, std::string_view raw_name)
    : eco(e), name(canonical_package_name(e, raw_name)) {}

std::string PackageId::display() const {
    return std::string(to_string(eco)) + "/" + name;
}

std::string_view to_string(DependencyKind kind) {
    switch (kind) {
    case DependencyKind::regular: return "regular";
    case DependencyKind::dev: return "dev";
    case DependencyKind::optional: return "optional";
    }
    return "?";
}

std::optional<DependencyKind> parse_dependency_kind(std::string_view text) {
    if (text == "regular" || text == "runtime" || text == "normal" || text.empty())
        return DependencyKind::regular;
    if (text == "dev" || text == "development") return DependencyKind::dev;
    if (text == "optional") return DependencyKind::optional;
    return std::nullopt;
}

} // namespace depmet
