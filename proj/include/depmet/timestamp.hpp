#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace depmet {

// Timestamps are UTC seconds since the Unix epoch. Registry exports carry
// RFC 3339 instants ("2013-04-30T00:00:00Z"); date-only forms are accepted
// and taken as midnight UTC. Fractional seconds are parsed and truncated.

inline constexpr std::int64_t kSecondsPerDay = 86400;

std::optional<std::int64_t> try_parse_timestamp(std::string_view text);

/// Throws ParseError on malformed input.
std::int64_t parse_timestamp(std::string_view text);

std::string format_timestamp(std::int64_t t);

/// "YYYY-MM-DD" (UTC day containing t).
std::string format_date(std::int64_t t);

inline double seconds_to_days(std::int64_t seconds) {
    return static_cast<double>(seconds) / static_cast<double>(kSecondsPerDay);
}

} // namespace depmet
