#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace syncorr {

// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

// Whole-string parse; nullopt on trailing characters or range errors.
std::optional<double> parse_double(std::string_view text);
std::optional<unsigned long long> parse_unsigned(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace syncorr
