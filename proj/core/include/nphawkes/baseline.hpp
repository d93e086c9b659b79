#pragma once

#include <vector>

#include "nphawkes/catalog.hpp"
#include "nphawkes/misd.hpp"

namespace nphawkes {

// Exponential self-excitation contagion model: a prior event raises the
// expected count on a later day by n_secondary times the probability mass of
// an Exp(t_excite) lag landing inside that day.
struct TowersModel {
  double t_excite = 13.0;     // mean contagion duration, days
  double n_secondary = 0.0;   // expected secondary events per event
  double n0 = 0.0;            // constant baseline daily count
  std::vector<double> n0_by_day;  // optional per-day table overriding n0

  double n0_at(double t) const;
};

void validate_towers(const TowersModel& model);

// Probability the contagion of an event lands on the day `delta_days` days
// later: exp(-(d-1)/t) - exp(-d/t). These telescope to 1 over d >= 1.
double towers_probability(int delta_days, double t_excite);

// Expected daily count at t_n: n0 plus n_secondary-weighted contagion from
// strictly earlier events; fractional gaps round up to the covering day.
double towers_expected(double t_n, const EventCatalog& catalog,
                       const TowersModel& model);

struct ComparisonReport {
  double window_days = 13.0;
  double misd_offspring_within_window = 0.0;
  double towers_n_secondary = 0.0;
  // Expected-count series at integer days 0..T-1 given strictly earlier
  // events: the fitted intensity and the contagion baseline side by side.
  std::vector<double> misd_daily;
  std::vector<double> towers_daily;
};

ComparisonReport compare(const FittedModel& fitted, const TowersModel& model,
                         const EventCatalog& catalog,
                         double window_days = 13.0);

}  // namespace nphawkes
