#ifndef RELIASCAN_PERIOD_HPP_
#define RELIASCAN_PERIOD_HPP_

#include <chrono>
#include <compare>
#include <cstdio>
#include <string>

#include "reliascan/errors.hpp"

namespace reliascan {

// Calendar date (UTC, day resolution). Complaint timestamps never need
// sub-day precision here.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;
};

// One calendar month, stored as a flat index so that adjacent months differ
// by exactly 1. This is the atomic time bucket; quarterly windows are runs
// of three of these.
struct Period {
    int index = 0;  // year * 12 + (month - 1)

    static Period from_ym(int year, int month) { return Period{year * 12 + (month - 1)}; }
    int year() const { return index >= 0 ? index / 12 : (index - 11) / 12; }
    int month() const { return index - year() * 12 + 1; }

    Period next() const { return Period{index + 1}; }

    auto operator<=>(const Period&) const = default;
};

namespace detail {

inline bool parse_fixed_int(const std::string& s, size_t pos, size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int value = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

}  // namespace detail

// Parses ISO-8601 `YYYY-MM-DD`. Dates outside [1900-01-01, 2100-01-01] or
// not on the civil calendar are rejected.
inline Date parse_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    bool ok = text.size() == 10 && text[4] == '-' && text[7] == '-' &&
              detail::parse_fixed_int(text, 0, 4, y) &&
              detail::parse_fixed_int(text, 5, 2, m) &&
              detail::parse_fixed_int(text, 8, 2, d);
    if (ok) {
        std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
        ok = ymd.ok();
    }
    if (ok) {
        Date date{y, m, d};
        ok = Date{1900, 1, 1} <= date && date <= Date{2100, 1, 1};
    }
    if (!ok) throw Error(ErrorCode::parse_error, "bad date '" + text + "'");
    return Date{y, m, d};
}

// Parses `YYYY-MM`.
inline Period parse_period(const std::string& text) {
    int y = 0, m = 0;
    bool ok = text.size() == 7 && text[4] == '-' &&
              detail::parse_fixed_int(text, 0, 4, y) &&
              detail::parse_fixed_int(text, 5, 2, m) && m >= 1 && m <= 12 &&
              y >= 1900 && y <= 2100;
    if (!ok) throw Error(ErrorCode::parse_error, "bad period '" + text + "'");
    return Period::from_ym(y, m);
}

inline Period period_of(const Date& d) { return Period::from_ym(d.year, d.month); }

inline std::string format_date(const Date& d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

inline std::string format_period(Period p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d", p.year(), p.month());
    return buf;
}

}  // namespace reliascan

#endif  // RELIASCAN_PERIOD_HPP_
