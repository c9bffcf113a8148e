#include "corrlife/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace corrlife {

namespace {

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len) {
    int value = 0;
    for (std::size_t k = pos; k < pos + len; ++k) {
        const char c = text[k];
        if (c < '0' || c > '9') {
            throw std::invalid_argument("bad date '" + std::string(text) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("bad date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    const Date date{std::chrono::year{parse_fixed(text, 0, 4)},
                    std::chrono::month{static_cast<unsigned>(parse_fixed(text, 5, 2))},
                    std::chrono::day{static_cast<unsigned>(parse_fixed(text, 8, 2))}};
    if (!date.ok()) {
        throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
    }
    return date;
}

std::string format_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

Date next_weekday(Date date) {
    std::chrono::sys_days day{date};
    do {
        day += std::chrono::days{1};
    } while (std::chrono::weekday{day} == std::chrono::Saturday ||
             std::chrono::weekday{day} == std::chrono::Sunday);
    return Date{day};
}

}  // namespace corrlife
