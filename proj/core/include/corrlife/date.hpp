#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace corrlife {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
/// Throws std::invalid_argument on anything else, including impossible dates.
Date parse_date(std::string_view text);

std::string format_date(Date date);

/// Days between two dates (b - a).
inline int days_between(Date a, Date b) {
    return static_cast<int>((std::chrono::sys_days{b} - std::chrono::sys_days{a}).count());
}

/// Next Monday-to-Friday date after `date`.
Date next_weekday(Date date);

}  // namespace corrlife
