#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bss/types.hpp"

namespace bss {

/// Parses "YYYY-MM-DD HH:MM:SS" or "YYYY-MM-DDTHH:MM:SS", optional
/// fractional seconds (truncated) and trailing 'Z'. Returns nullopt on
/// anything malformed or out of calendar range.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// "YYYY-MM-DD HH:MM:SS"
std::string format_timestamp(Timestamp t);

/// Hour of day 0..23.
int hour_of_day(Timestamp t);

/// Days since the epoch; identifies the calendar date (the day index k).
std::int64_t day_index(Timestamp t);

/// Midnight of a calendar date as a Timestamp.
Timestamp timestamp_of_date(int year, int month, int day);

}  // namespace bss
