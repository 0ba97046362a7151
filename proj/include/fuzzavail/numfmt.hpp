#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fuzzavail {

// Shortest decimal text that parses back to exactly `value`. Always uses '.'
// regardless of the global locale.
std::string format_number(double value);

// Locale-independent parse of a complete token; nullopt on any trailing junk,
// empty input, or non-finite result.
std::optional<double> parse_number(std::string_view text);

}  // namespace fuzzavail
