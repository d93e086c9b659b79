#include "nphawkes/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "nphawkes/csv.hpp"
#include "nphawkes/errors.hpp"
#include "nphawkes/rng.hpp"

namespace nphawkes {

namespace {

void sort_events(std::vector<Event>& events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) {
                     if (a.t != b.t) return a.t < b.t;
                     return a.source_row < b.source_row;
                   });
}

int parse_mark(const std::string& field, std::size_t row) {
  int value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("row " + std::to_string(row) + ": victim count '" +
                     field + "' is not an integer");
  }
  return value;
}

bool parse_flag(const std::string& field) {
  std::string lower;
  for (char c : field) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return lower == "1" || lower == "true" || lower == "yes" || lower == "y";
}

}  // namespace

void validate_catalog(const EventCatalog& catalog) {
  const double T = catalog.window_length_days;
  if (!(T > 0.0) && !catalog.events.empty()) {
    throw ConfigError("catalog window length must be positive");
  }
  const Event* prev = nullptr;
  for (const Event& e : catalog.events) {
    if (e.t < 0.0 || e.t > T) {
      throw ConfigError("event at t=" + std::to_string(e.t) +
                        " lies outside [0, " + std::to_string(T) + "]");
    }
    if (e.mark < 1) {
      throw ConfigError("event mark must be >= 1, got " +
                        std::to_string(e.mark));
    }
    if (prev && (prev->t > e.t ||
                 (prev->t == e.t && prev->source_row > e.source_row))) {
      throw ConfigError("catalog not sorted by (t, source_row)");
    }
    prev = &e;
  }
}

IngestResult ingest(std::string_view csv_text, const SchemaMapping& mapping) {
  CsvTable table = parse_csv(csv_text);
  const std::size_t date_col = table.column(mapping.date_column);
  const std::size_t mark_col = table.column(mapping.mark_column);
  std::size_t flag_col = 0;
  const bool exclude_perp =
      mapping.mark_rule.kind == MarkRuleKind::ExcludePerpetratorFlagColumn;
  if (exclude_perp) flag_col = table.column(mapping.mark_rule.flag_column);

  if (days_between(mapping.window_start, mapping.window_end) < 0) {
    throw ConfigError("window_end precedes window_start");
  }

  IngestResult result;
  result.catalog.window_start_date = mapping.window_start;
  result.catalog.window_length_days = static_cast<double>(
      days_between(mapping.window_start, mapping.window_end) + 1);

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_number = r + 2;  // header is row 1
    Date date;
    try {
      date = parse_date(row[date_col], mapping.date_format);
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(row_number) + ": " + e.what());
    }
    int mark = parse_mark(row[mark_col], row_number);
    if (exclude_perp && parse_flag(row[flag_col])) mark -= 1;
    if (mark < 1) {
      throw ParseError("row " + std::to_string(row_number) +
                       ": victim count " + std::to_string(mark) +
                       " after mark rule, must be >= 1");
    }
    const long offset = days_between(mapping.window_start, date);
    if (offset < 0 ||
        days_between(date, mapping.window_end) < 0) {
      ++result.dropped_outside_window;
      continue;
    }
    result.catalog.events.push_back(Event{static_cast<double>(offset), mark,
                                          static_cast<int>(row_number)});
  }
  sort_events(result.catalog.events);
  validate_catalog(result.catalog);
  return result;
}

CatalogSummary summarize(const EventCatalog& catalog) {
  CatalogSummary s;
  s.n = catalog.n();
  s.T = catalog.window_length_days;

  // Leading integer of the definition note, when present ("3+ shot" -> 3).
  const std::string& note = catalog.definition_note;
  std::size_t i = 0;
  while (i < note.size() &&
         std::isdigit(static_cast<unsigned char>(note[i]))) {
    ++i;
  }
  if (i > 0) s.definition_threshold = std::stoi(note.substr(0, i));

  std::map<std::string, int> by_month;
  if (s.T > 0.0) {
    const Date start = catalog.window_start_date;
    const Date end = add_days(start, std::max(0L, static_cast<long>(s.T) - 1));
    for (YearMonth ym = year_month_of(start);; ym = next_month(ym)) {
      by_month[month_key(ym)] = 0;
      if (ym == year_month_of(end)) break;
    }
  }

  for (const Event& e : catalog.events) {
    if (s.n > 0) {
      s.mark_min = s.mark_min == 0 ? e.mark : std::min(s.mark_min, e.mark);
      s.mark_max = std::max(s.mark_max, e.mark);
    }
    ++s.mark_histogram[e.mark];
    if (s.definition_threshold && e.mark < *s.definition_threshold) {
      ++s.below_definition;
    }
    Date day = add_days(catalog.window_start_date,
                        static_cast<long>(std::floor(e.t)));
    ++by_month[month_key(year_month_of(day))];
  }
  s.monthly_counts.assign(by_month.begin(), by_month.end());
  return s;
}

EventCatalog with_time_jitter(const EventCatalog& catalog, std::uint64_t seed) {
  EventCatalog jittered = catalog;
  Rng rng(seed);
  for (Event& e : jittered.events) {
    double day = std::floor(e.t);
    double t = day + rng.uniform01();
    e.t = std::min(t, catalog.window_length_days);
  }
  std::stable_sort(jittered.events.begin(), jittered.events.end(),
                   [](const Event& a, const Event& b) {
                     if (a.t != b.t) return a.t < b.t;
                     return a.source_row < b.source_row;
                   });
  return jittered;
}

std::string to_normalized_csv(const EventCatalog& catalog) {
  std::string out = "date,victims\n";
  for (const Event& e : catalog.events) {
    Date day = add_days(catalog.window_start_date,
                        static_cast<long>(std::floor(e.t)));
    out += format_iso(day);
    out += ',';
    out += std::to_string(e.mark);
    out += '\n';
  }
  return out;
}

EventCatalog from_normalized_csv(std::string_view csv_text,
                                 std::optional<Date> window_start,
                                 std::optional<Date> window_end) {
  CsvTable table = parse_csv(csv_text);
  const std::size_t date_col = table.column("date");
  const std::size_t mark_col = table.column("victims");

  std::vector<std::pair<Date, int>> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t row_number = r + 2;
    Date date;
    try {
      date = parse_date(table.rows[r][date_col], "%Y-%m-%d");
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(row_number) + ": " + e.what());
    }
    rows.emplace_back(date, parse_mark(table.rows[r][mark_col], row_number));
  }

  if (!window_start || !window_end) {
    if (rows.empty()) {
      throw ConfigError(
          "cannot infer a window from an empty catalog; pass window bounds");
    }
    Date lo = rows[0].first, hi = rows[0].first;
    for (const auto& [date, mark] : rows) {
      if (days_between(lo, date) < 0) lo = date;
      if (days_between(date, hi) < 0) hi = date;
    }
    if (!window_start) window_start = lo;
    if (!window_end) window_end = hi;
  }

  EventCatalog catalog;
  catalog.window_start_date = *window_start;
  catalog.window_length_days = static_cast<double>(
      days_between(*window_start, *window_end) + 1);
  if (catalog.window_length_days <= 0) {
    throw ConfigError("window_end precedes window_start");
  }
  int source_row = 1;
  for (const auto& [date, mark] : rows) {
    ++source_row;
    const long offset = days_between(*window_start, date);
    if (offset < 0 || days_between(date, *window_end) < 0) continue;
    if (mark < 1) {
      throw ParseError("row " + std::to_string(source_row) +
                       ": victim count must be >= 1");
    }
    catalog.events.push_back(
        Event{static_cast<double>(offset), mark, source_row});
  }
  sort_events(catalog.events);
  validate_catalog(catalog);
  return catalog;
}

}  // namespace nphawkes
