#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dpsrk {

// Shortest decimal text that parses back to exactly `value` (C locale).
std::string format_double(double value);

// Whole-string C-locale parse; nullopt on any trailing or missing characters.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace dpsrk
