#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace gazeff {

// Shortest decimal string that round-trips to the same double.
// Used for every numeric field we emit so that re-parsing an output
// file reproduces the in-memory value bit for bit.
std::string format_double(double v);

std::string format_int(long long v);

// Strict full-string parses; return false on trailing junk or empty input.
bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

std::string_view trim(std::string_view s);

}  // namespace gazeff
