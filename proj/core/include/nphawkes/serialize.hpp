#pragma once

#include <string>
#include <string_view>

#include "nphawkes/baseline.hpp"
#include "nphawkes/catalog.hpp"
#include "nphawkes/diagnostics.hpp"
#include "nphawkes/intensity.hpp"
#include "nphawkes/misd.hpp"
#include "nphawkes/simulate.hpp"

namespace nphawkes {

// Model interchange schema:
//   { "mu": r, "g": {"edges": [...], "values": [...]},
//              "k": {"edges": [...], "values": [...]} }
// The fitted-model schema extends it with "se_g", "se_k", "eta_t",
// "iterations", "converged". Parsers ignore unknown keys, so a fitted-model
// file is accepted anywhere a model is.
std::string model_to_json(const HawkesModel& model);
HawkesModel model_from_json(std::string_view text);

std::string fitted_to_json(const FittedModel& fitted);

// Mapping schema: keys date_column, date_format, mark_column, mark_rule,
// window_start, window_end. mark_rule is "as_is" or
// {"exclude_perpetrator_flag_column": "<column>"}.
SchemaMapping mapping_from_json(std::string_view text);

// {"3": 0.25, "4": 0.75} — mark value to probability.
MarkDistribution mark_distribution_from_json(std::string_view text);
std::string mark_distribution_to_json(const MarkDistribution& dist);

// {"t_excite": 13, "n_secondary": 0.3, "n0": 0.01, "n0_by_day": [...]}
// (n0_by_day optional).
TowersModel towers_from_json(std::string_view text);

std::string comparison_to_json(const ComparisonReport& report);

std::string summary_to_json(const CatalogSummary& summary,
                            const EventCatalog& catalog,
                            int dropped_outside_window);

std::string offspring_to_json(const OffspringStats& stats, int n, double T);

std::string uniformity_to_json(const UniformityReport& report);

std::string residual_to_csv(const ResidualProcess& residual);

std::string monthly_expected_to_csv(const std::vector<MonthlyExpected>& rows);

std::string monthly_histogram_to_csv(
    const std::vector<std::pair<std::string, int>>& rows);

// bin_start,bin_end,value,se,lo,hi with the 2*SE band truncated at zero.
std::string histogram_plot_csv(const HistogramFunction& f,
                               const std::vector<double>& se);

}  // namespace nphawkes
