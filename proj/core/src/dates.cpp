#include "nphawkes/dates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "nphawkes/errors.hpp"

namespace nphawkes {

namespace {

constexpr std::array<const char*, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

[[noreturn]] void fail(std::string_view text, std::string_view why) {
  throw ParseError("cannot parse date '" + std::string(text) + "': " +
                   std::string(why));
}

// Consumes min..max digits from text at pos; advances pos.
int read_int(std::string_view text, std::size_t& pos, int min_digits,
             int max_digits) {
  int value = 0;
  int digits = 0;
  while (pos < text.size() && digits < max_digits &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits < min_digits) fail(text, "expected digits");
  return value;
}

unsigned read_month_name(std::string_view text, std::size_t& pos) {
  std::string word;
  while (pos < text.size() &&
         std::isalpha(static_cast<unsigned char>(text[pos]))) {
    word.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(text[pos]))));
    ++pos;
  }
  if (word.size() < 3) fail(text, "expected month name");
  for (unsigned m = 0; m < kMonthNames.size(); ++m) {
    std::string_view full = kMonthNames[m];
    if (word == full || (word.size() == 3 && full.substr(0, 3) == word)) {
      return m + 1;
    }
  }
  fail(text, "unknown month name");
}

}  // namespace

Date parse_date(std::string_view text, std::string_view format) {
  int year = 0;
  unsigned month = 0;
  unsigned day = 0;
  bool have_year = false, have_month = false, have_day = false;

  std::size_t pos = 0;
  for (std::size_t f = 0; f < format.size(); ++f) {
    if (format[f] != '%') {
      if (pos >= text.size() || text[pos] != format[f]) {
        fail(text, "does not match format '" + std::string(format) + "'");
      }
      ++pos;
      continue;
    }
    if (++f >= format.size()) fail(text, "dangling % in format");
    switch (format[f]) {
      case 'Y':
        year = read_int(text, pos, 4, 4);
        have_year = true;
        break;
      case 'y': {
        int two = read_int(text, pos, 2, 2);
        year = two >= 69 ? 1900 + two : 2000 + two;
        have_year = true;
        break;
      }
      case 'm':
        month = static_cast<unsigned>(read_int(text, pos, 1, 2));
        have_month = true;
        break;
      case 'd':
        day = static_cast<unsigned>(read_int(text, pos, 1, 2));
        have_day = true;
        break;
      case 'b':
      case 'B':
        month = read_month_name(text, pos);
        have_month = true;
        break;
      case '%':
        if (pos >= text.size() || text[pos] != '%') fail(text, "expected %");
        ++pos;
        break;
      default:
        throw ConfigError("unsupported date format token %" +
                          std::string(1, format[f]));
    }
  }
  if (pos != text.size()) fail(text, "trailing characters");
  if (!have_year || !have_month || !have_day) {
    throw ConfigError("date format '" + std::string(format) +
                      "' must contain year, month and day tokens");
  }

  Date d{std::chrono::year{year}, std::chrono::month{month},
         std::chrono::day{day}};
  if (!d.ok()) fail(text, "no such calendar date");
  return d;
}

std::string format_iso(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(d.year()),
                unsigned(d.month()), unsigned(d.day()));
  return buf;
}

Date add_days(Date d, long n) {
  return Date{std::chrono::sys_days{d} + std::chrono::days{n}};
}

long days_between(Date from, Date to) {
  return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

YearMonth year_month_of(Date d) {
  return {int(d.year()), unsigned(d.month())};
}

YearMonth next_month(YearMonth ym) {
  if (ym.month == 12) return {ym.year + 1, 1};
  return {ym.year, ym.month + 1};
}

int days_in_month(YearMonth ym) {
  using namespace std::chrono;
  auto last = year_month_day_last{year{ym.year}, month_day_last{month{ym.month}}};
  return int(unsigned(last.day()));
}

std::string month_key(YearMonth ym) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d-%02u", ym.year, ym.month);
  return buf;
}

int days_in_month_within(YearMonth ym, Date start, Date end) {
  Date first{std::chrono::year{ym.year}, std::chrono::month{ym.month},
             std::chrono::day{1}};
  Date last = add_days(Date{std::chrono::year{ym.year},
                            std::chrono::month{ym.month}, std::chrono::day{1}},
                       days_in_month(ym) - 1);
  Date lo = days_between(first, start) > 0 ? start : first;
  Date hi = days_between(last, end) < 0 ? last : end;
  long n = days_between(lo, hi) + 1;
  return n > 0 ? static_cast<int>(n) : 0;
}

}  // namespace nphawkes
