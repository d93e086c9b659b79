#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nphawkes/dates.hpp"

namespace nphawkes {

// One marked event: elapsed time since window start (days) plus the victim
// count. source_row is the 1-based row of the originating file and fixes the
// order of same-time events.
struct Event {
  double t = 0.0;
  int mark = 1;
  int source_row = 0;
};

struct EventCatalog {
  std::vector<Event> events;  // sorted by (t, source_row)
  Date window_start_date{};
  double window_length_days = 0.0;  // T
  std::string definition_note;      // e.g. "3+ shot"

  int n() const { return static_cast<int>(events.size()); }
};

// Enforces the catalog invariants: ordering, t in [0, T], marks >= 1.
void validate_catalog(const EventCatalog& catalog);

enum class MarkRuleKind {
  AsIs,
  // Subtract one victim when the named boolean column is set (sources that
  // count a killed perpetrator among the victims).
  ExcludePerpetratorFlagColumn,
};

struct MarkRule {
  MarkRuleKind kind = MarkRuleKind::AsIs;
  std::string flag_column;
};

struct SchemaMapping {
  std::string date_column;
  std::string date_format;  // parse_date pattern, e.g. "%Y-%m-%d"
  std::string mark_column;
  MarkRule mark_rule;
  Date window_start{};
  Date window_end{};  // inclusive
};

struct IngestResult {
  EventCatalog catalog;
  int dropped_outside_window = 0;
};

// Normalizes a raw CSV into a validated catalog. Events get t = whole days
// since window_start (fractional part 0); rows dated outside the window are
// dropped and counted. Unparseable dates or marks fail fast with the row
// number. T = days(window_end - window_start) + 1, so the final day's 24
// hours lie inside [0, T].
IngestResult ingest(std::string_view csv_text, const SchemaMapping& mapping);

struct CatalogSummary {
  int n = 0;
  double T = 0.0;
  int mark_min = 0;  // 0 when the catalog is empty
  int mark_max = 0;
  std::vector<std::pair<std::string, int>> monthly_counts;  // covers the window
  std::map<int, int> mark_histogram;
  // Count of events whose mark falls below the definitional threshold parsed
  // from definition_note's leading integer ("3+ shot" -> 3), if any.
  std::optional<int> definition_threshold;
  int below_definition = 0;
};

CatalogSummary summarize(const EventCatalog& catalog);

// Spreads same-day events inside their day by a seeded uniform offset in
// [0, 1); events are re-sorted afterwards. Off by default everywhere.
EventCatalog with_time_jitter(const EventCatalog& catalog, std::uint64_t seed);

// Normalized on-disk schema: `date,victims`, ISO dates, day resolution.
std::string to_normalized_csv(const EventCatalog& catalog);

// Reads a normalized catalog. When no window is given, it is inferred as
// [first event date, last event date].
EventCatalog from_normalized_csv(std::string_view csv_text,
                                 std::optional<Date> window_start = {},
                                 std::optional<Date> window_end = {});

}  // namespace nphawkes
