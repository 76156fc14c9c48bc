#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depmet {

/// Splits one RFC-4180-style line (quotes, doubled-quote escapes; fields may
/// not span lines). nullopt on unbalanced quoting or trailing garbage.
std::optional<std::vector<std::string>> parse_csv_line(std::string_view line);

/// Quotes the field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

std::string csv_join(const std::vector<std::string>& fields);

} // namespace depmet
