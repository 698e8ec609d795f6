#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsignals::util {

// Shortest round-trip representation; parse_double(format_double(x)) == x.
std::string format_double(double v);
double parse_double(std::string_view s);

// Lowercase tokenization on non-alphanumeric runs (ASCII).
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Percent-decodes a URL path component ("Apple_Inc." stays as-is).
std::string url_decode(std::string_view s);
std::string url_encode_path_segment(std::string_view s);

}  // namespace newsignals::util
