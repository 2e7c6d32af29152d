#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace itboost {

/// Shortest decimal text that parses back to the identical double.
std::string format_real(double value);

/// Whole-token parse; nullopt if the token is not entirely a real literal.
std::optional<double> parse_real(std::string_view token);

std::vector<std::string> split_fields(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

}  // namespace itboost
