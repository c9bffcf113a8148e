#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corrlife {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// As format_double, with an empty optional rendered as `na`.
std::string format_optional(const std::optional<double>& value, std::string_view na = "NA");

/// Splits on `sep` without collapsing empty fields; trims ASCII whitespace
/// (including a trailing '\r') from each field.
std::vector<std::string> split_fields(std::string_view line, char sep = ',');

std::string_view trim(std::string_view text);

}  // namespace corrlife
