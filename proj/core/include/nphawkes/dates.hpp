#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace nphawkes {

using Date = std::chrono::year_month_day;

// Strict pattern-driven date parsing. Supported tokens: %Y (4-digit year),
// %y (2-digit year, POSIX pivot 69), %m, %d (1-2 digits), %b/%B (English
// month name, case-insensitive). Any other character must match literally.
// Throws ParseError on mismatch or on a date that does not exist.
Date parse_date(std::string_view text, std::string_view format);

// ISO 8601, zero-padded.
std::string format_iso(Date d);

Date add_days(Date d, long n);
long days_between(Date from, Date to);  // to - from, in days

struct YearMonth {
  int year = 0;
  unsigned month = 1;  // 1-12

  friend bool operator==(const YearMonth&, const YearMonth&) = default;
};

YearMonth year_month_of(Date d);
YearMonth next_month(YearMonth ym);
int days_in_month(YearMonth ym);
std::string month_key(YearMonth ym);  // "YYYY-MM"

// Number of days of month `ym` that fall inside [start, end] (dates
// inclusive). Zero when the month does not intersect the window.
int days_in_month_within(YearMonth ym, Date start, Date end);

}  // namespace nphawkes
