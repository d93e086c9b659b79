#include "nphawkes/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "nphawkes/errors.hpp"

namespace nphawkes {

using json = nlohmann::json;

namespace {

json parse(std::string_view text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError(std::string("malformed JSON in ") + what);
  }
  return j;
}

double number_at(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(std::string(what) + ": missing numeric field '" + key +
                     "'");
  }
  return j[key].get<double>();
}

std::string string_at(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(std::string(what) + ": missing string field '" + key +
                     "'");
  }
  return j[key].get<std::string>();
}

std::vector<double> numbers_at(const json& j, const char* key,
                               const char* what) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError(std::string(what) + ": missing array field '" + key +
                     "'");
  }
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) {
      throw ParseError(std::string(what) + ": '" + key +
                       "' must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

json histogram_to_json(const HistogramFunction& f) {
  return json{{"edges", f.edges}, {"values", f.values}};
}

HistogramFunction histogram_from_json(const json& j, const char* what) {
  HistogramFunction f;
  f.edges = numbers_at(j, "edges", what);
  f.values = numbers_at(j, "values", what);
  validate_histogram(f);
  return f;
}

}  // namespace

std::string model_to_json(const HawkesModel& model) {
  json j{{"mu", model.mu},
         {"g", histogram_to_json(model.g)},
         {"k", histogram_to_json(model.k)}};
  return j.dump(2) + "\n";
}

HawkesModel model_from_json(std::string_view text) {
  json j = parse(text, "model");
  HawkesModel model;
  model.mu = number_at(j, "mu", "model");
  if (!j.contains("g") || !j.contains("k")) {
    throw ParseError("model: missing 'g' or 'k' histogram");
  }
  model.g = histogram_from_json(j["g"], "model.g");
  model.k = histogram_from_json(j["k"], "model.k");
  validate_model(model);
  return model;
}

std::string fitted_to_json(const FittedModel& fitted) {
  json j{{"mu", fitted.model.mu},
         {"g", histogram_to_json(fitted.model.g)},
         {"k", histogram_to_json(fitted.model.k)},
         {"se_g", fitted.se_g},
         {"se_k", fitted.se_k},
         {"eta_t", fitted.eta_t},
         {"iterations", fitted.iterations},
         {"converged", fitted.converged}};
  if (fitted.degenerate) j["degenerate"] = true;
  return j.dump(2) + "\n";
}

SchemaMapping mapping_from_json(std::string_view text) {
  json j = parse(text, "mapping");
  SchemaMapping m;
  m.date_column = string_at(j, "date_column", "mapping");
  m.date_format = string_at(j, "date_format", "mapping");
  m.mark_column = string_at(j, "mark_column", "mapping");
  m.window_start =
      parse_date(string_at(j, "window_start", "mapping"), "%Y-%m-%d");
  m.window_end = parse_date(string_at(j, "window_end", "mapping"), "%Y-%m-%d");

  if (!j.contains("mark_rule")) {
    throw ParseError("mapping: missing field 'mark_rule'");
  }
  const json& rule = j["mark_rule"];
  if (rule.is_string() && rule.get<std::string>() == "as_is") {
    m.mark_rule.kind = MarkRuleKind::AsIs;
  } else if (rule.is_object() &&
             rule.contains("exclude_perpetrator_flag_column") &&
             rule["exclude_perpetrator_flag_column"].is_string()) {
    m.mark_rule.kind = MarkRuleKind::ExcludePerpetratorFlagColumn;
    m.mark_rule.flag_column =
        rule["exclude_perpetrator_flag_column"].get<std::string>();
  } else {
    throw ParseError(
        "mapping: mark_rule must be \"as_is\" or "
        "{\"exclude_perpetrator_flag_column\": \"<column>\"}");
  }
  return m;
}

MarkDistribution mark_distribution_from_json(std::string_view text) {
  json j = parse(text, "mark distribution");
  if (!j.is_object() || j.empty()) {
    throw ParseError("mark distribution: expected a non-empty object");
  }
  MarkDistribution dist;
  for (const auto& [key, value] : j.items()) {
    int mark = 0;
    try {
      mark = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError("mark distribution: key '" + key +
                       "' is not an integer mark");
    }
    if (!value.is_number()) {
      throw ParseError("mark distribution: probability for '" + key +
                       "' must be a number");
    }
    dist.pmf.emplace_back(mark, value.get<double>());
  }
  std::sort(dist.pmf.begin(), dist.pmf.end());
  validate_mark_distribution(dist);
  return dist;
}

std::string mark_distribution_to_json(const MarkDistribution& dist) {
  json j = json::object();
  for (const auto& [mark, prob] : dist.pmf) {
    j[std::to_string(mark)] = prob;
  }
  return j.dump(2) + "\n";
}

TowersModel towers_from_json(std::string_view text) {
  json j = parse(text, "baseline config");
  TowersModel m;
  m.t_excite = number_at(j, "t_excite", "baseline config");
  m.n_secondary = number_at(j, "n_secondary", "baseline config");
  if (j.contains("n0") && j["n0"].is_number()) {
    m.n0 = j["n0"].get<double>();
  }
  if (j.contains("n0_by_day")) {
    m.n0_by_day = numbers_at(j, "n0_by_day", "baseline config");
  }
  validate_towers(m);
  return m;
}

std::string comparison_to_json(const ComparisonReport& report) {
  json j{{"window_days", report.window_days},
         {"misd_offspring_within_window", report.misd_offspring_within_window},
         {"towers_n_secondary", report.towers_n_secondary},
         {"misd_daily", report.misd_daily},
         {"towers_daily", report.towers_daily}};
  return j.dump(2) + "\n";
}

std::string summary_to_json(const CatalogSummary& summary,
                            const EventCatalog& catalog,
                            int dropped_outside_window) {
  json monthly = json::object();
  for (const auto& [month, count] : summary.monthly_counts) {
    monthly[month] = count;
  }
  json marks = json::object();
  for (const auto& [mark, count] : summary.mark_histogram) {
    marks[std::to_string(mark)] = count;
  }
  json j{{"n", summary.n},
         {"T", summary.T},
         {"window_start", format_iso(catalog.window_start_date)},
         {"mark_min", summary.mark_min},
         {"mark_max", summary.mark_max},
         {"monthly_counts", monthly},
         {"mark_histogram", marks},
         {"dropped_outside_window", dropped_outside_window},
         {"definition_note", catalog.definition_note}};
  if (summary.definition_threshold) {
    j["definition_threshold"] = *summary.definition_threshold;
    j["below_definition"] = summary.below_definition;
  }
  return j.dump(2) + "\n";
}

std::string offspring_to_json(const OffspringStats& stats, int n, double T) {
  json j{{"mean_offspring", stats.mean_offspring},
         {"mean_offspring_within_window", stats.mean_offspring_within_window},
         {"window_days", stats.window_days},
         {"diagonal_mass_fraction", stats.diagonal_mass_fraction},
         {"background_rate", stats.background_rate},
         {"n", n},
         {"T", T}};
  return j.dump(2) + "\n";
}

std::string uniformity_to_json(const UniformityReport& report) {
  json j;
  j["ks"] = report.ks_statistic ? json(*report.ks_statistic) : json(nullptr);
  j["p"] = report.ks_p_value ? json(*report.ks_p_value) : json(nullptr);
  return j.dump(2) + "\n";
}

std::string residual_to_csv(const ResidualProcess& residual) {
  std::string out = "t,label\n";
  char buf[64];
  for (const ResidualPoint& p : residual.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,", p.t);
    out += buf;
    out += to_string(p.label);
    out += '\n';
  }
  return out;
}

std::string monthly_expected_to_csv(const std::vector<MonthlyExpected>& rows) {
  std::string out = "month,observed,expected\n";
  char buf[96];
  for (const MonthlyExpected& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.17g\n", row.month.c_str(),
                  row.observed, row.expected);
    out += buf;
  }
  return out;
}

std::string monthly_histogram_to_csv(
    const std::vector<std::pair<std::string, int>>& rows) {
  std::string out = "month,count\n";
  for (const auto& [month, count] : rows) {
    out += month;
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

std::string histogram_plot_csv(const HistogramFunction& f,
                               const std::vector<double>& se) {
  if (se.size() != f.values.size()) {
    throw ConfigError("one standard error per histogram bin required");
  }
  std::string out = "bin_start,bin_end,value,se,lo,hi\n";
  char buf[160];
  for (std::size_t l = 0; l < f.values.size(); ++l) {
    const double lo = std::max(0.0, f.values[l] - 2.0 * se[l]);
    const double hi = f.values[l] + 2.0 * se[l];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  f.edges[l], f.edges[l + 1], f.values[l], se[l], lo, hi);
    out += buf;
  }
  return out;
}

}  // namespace nphawkes
