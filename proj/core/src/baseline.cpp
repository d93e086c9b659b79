#include "nphawkes/baseline.hpp"

#include <cmath>
#include <string>

#include "nphawkes/errors.hpp"
#include "nphawkes/intensity.hpp"

namespace nphawkes {

double TowersModel::n0_at(double t) const {
  if (n0_by_day.empty()) return n0;
  long day = static_cast<long>(std::floor(t));
  if (day < 0) day = 0;
  if (day >= static_cast<long>(n0_by_day.size())) {
    return n0_by_day.back();
  }
  return n0_by_day[static_cast<std::size_t>(day)];
}

void validate_towers(const TowersModel& model) {
  if (!(model.t_excite > 0.0)) {
    throw ConfigError("t_excite must be positive");
  }
  if (!(model.n_secondary >= 0.0)) {
    throw ConfigError("n_secondary must be >= 0");
  }
}

double towers_probability(int delta_days, double t_excite) {
  if (delta_days < 1) {
    throw DomainError("day gap must be >= 1, got " +
                      std::to_string(delta_days));
  }
  if (!(t_excite > 0.0)) throw ConfigError("t_excite must be positive");
  const double d = static_cast<double>(delta_days);
  return std::exp(-(d - 1.0) / t_excite) - std::exp(-d / t_excite);
}

double towers_expected(double t_n, const EventCatalog& catalog,
                       const TowersModel& model) {
  validate_towers(model);
  double expected = model.n0_at(t_n);
  for (const Event& e : catalog.events) {
    if (e.t >= t_n) break;
    int delta = static_cast<int>(std::ceil(t_n - e.t));
    if (delta < 1) delta = 1;
    expected += model.n_secondary * towers_probability(delta, model.t_excite);
  }
  return expected;
}

ComparisonReport compare(const FittedModel& fitted, const TowersModel& model,
                         const EventCatalog& catalog, double window_days) {
  validate_towers(model);
  ComparisonReport report;
  report.window_days = window_days;
  report.towers_n_secondary = model.n_secondary;
  if (catalog.n() > 0) {
    report.misd_offspring_within_window =
        offspring_stats(fitted, catalog, window_days)
            .mean_offspring_within_window;
  }

  const long days = static_cast<long>(std::ceil(catalog.window_length_days));
  report.misd_daily.reserve(static_cast<std::size_t>(days));
  report.towers_daily.reserve(static_cast<std::size_t>(days));
  for (long d = 0; d < days; ++d) {
    const double t = static_cast<double>(d);
    report.misd_daily.push_back(
        conditional_intensity(fitted.model, t, catalog));
    report.towers_daily.push_back(towers_expected(t, catalog, model));
  }
  return report;
}

}  // namespace nphawkes
