#include "nphawkes/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nphawkes/errors.hpp"
#include "nphawkes/rng.hpp"

namespace nphawkes {

std::string_view to_string(ResidualLabel label) {
  switch (label) {
    case ResidualLabel::Retained: return "retained";
    case ResidualLabel::Thinned: return "thinned";
    case ResidualLabel::Simulated: return "simulated";
  }
  return "unknown";
}

std::vector<double> ResidualProcess::residual_times() const {
  std::vector<double> times;
  for (const ResidualPoint& p : points) {
    if (p.label != ResidualLabel::Thinned) times.push_back(p.t);
  }
  return times;
}

int ResidualProcess::count(ResidualLabel label) const {
  int c = 0;
  for (const ResidualPoint& p : points) c += p.label == label;
  return c;
}

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double choose_b(const HawkesModel& model, const EventCatalog& catalog,
                const BSelector& selector) {
  if (selector.kind == BSelector::Kind::Fixed) return selector.fixed_value;
  if (catalog.events.empty()) {
    throw ConfigError("median thinning rate needs a non-empty catalog");
  }
  return median_of(intensity_at_events(model, catalog));
}

ResidualProcess superthin(const HawkesModel& model, const EventCatalog& catalog,
                          double b, std::uint64_t seed) {
  if (!(b > 0.0)) throw ConfigError("thinning rate b must be positive");
  const double T = catalog.window_length_days;
  if (!(T > 0.0)) throw ConfigError("window length must be positive");

  ResidualProcess residual;
  residual.b = b;
  residual.T = T;
  residual.window_start_date = catalog.window_start_date;

  // Thinning stream: one uniform per observed point, catalog order.
  Rng thin_rng = Rng::derive(seed, 0);
  const std::vector<double> lambda = intensity_at_events(model, catalog);
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    const double u = thin_rng.uniform01();
    const bool keep = lambda[i] <= b || u < b / lambda[i];
    residual.points.push_back(ResidualPoint{
        catalog.events[i].t,
        keep ? ResidualLabel::Retained : ResidualLabel::Thinned});
  }

  // Superposition stream: candidate count by inverse CDF, then (time,
  // acceptance) pairs in generation order.
  Rng sup_rng = Rng::derive(seed, 1);
  const std::uint64_t candidates = sup_rng.poisson(b * T);
  for (std::uint64_t c = 0; c < candidates; ++c) {
    const double t = sup_rng.uniform01() * T;
    const double u = sup_rng.uniform01();
    const double gap = b - conditional_intensity(model, t, catalog);
    if (u * b < gap) {
      residual.points.push_back(ResidualPoint{t, ResidualLabel::Simulated});
    }
  }

  std::stable_sort(residual.points.begin(), residual.points.end(),
                   [](const ResidualPoint& a, const ResidualPoint& b_) {
                     return a.t < b_.t;
                   });
  return residual;
}

double ks_statistic_uniform(std::vector<double> times, double T) {
  if (times.empty()) throw ConfigError("KS statistic needs at least one point");
  if (!(T > 0.0)) throw ConfigError("window length must be positive");
  std::sort(times.begin(), times.end());
  const double n = static_cast<double>(times.size());
  double d = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double f = times[i] / T;
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

double kolmogorov_asymptotic_p(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

UniformityReport uniformity_tests(const ResidualProcess& residual) {
  UniformityReport report;

  std::map<std::string, int> by_month;
  if (residual.T > 0.0) {
    const Date start = residual.window_start_date;
    const Date end =
        add_days(start, std::max(0L, static_cast<long>(residual.T) - 1));
    for (YearMonth ym = year_month_of(start);; ym = next_month(ym)) {
      by_month[month_key(ym)] = 0;
      if (ym == year_month_of(end)) break;
    }
  }

  const std::vector<double> times = residual.residual_times();
  for (double t : times) {
    double day = std::clamp(std::floor(t), 0.0, residual.T - 1.0);
    Date d = add_days(residual.window_start_date,
                      std::max(0L, static_cast<long>(day)));
    ++by_month[month_key(year_month_of(d))];
  }
  report.monthly_histogram.assign(by_month.begin(), by_month.end());

  if (!times.empty()) {
    const double d = ks_statistic_uniform(times, residual.T);
    report.ks_statistic = d;
    report.ks_p_value =
        kolmogorov_asymptotic_p(std::sqrt(static_cast<double>(times.size())) * d);
  }
  return report;
}

std::vector<MonthlyExpected> monthly_expected(const HawkesModel& model,
                                              const EventCatalog& catalog) {
  const double T = catalog.window_length_days;
  std::vector<MonthlyExpected> rows;
  if (!(T > 0.0)) return rows;

  const Date start = catalog.window_start_date;
  const Date end = add_days(start, std::max(0L, static_cast<long>(T) - 1));
  const std::vector<double> lambda = intensity_at_events(model, catalog);

  std::map<std::string, std::vector<double>> lambda_by_month;
  std::map<std::string, int> observed;
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    Date d = add_days(start, static_cast<long>(std::floor(catalog.events[i].t)));
    const std::string key = month_key(year_month_of(d));
    lambda_by_month[key].push_back(lambda[i]);
    ++observed[key];
  }

  for (YearMonth ym = year_month_of(start);; ym = next_month(ym)) {
    const std::string key = month_key(ym);
    const int days = days_in_month_within(ym, start, end);
    MonthlyExpected row;
    row.month = key;
    auto it = lambda_by_month.find(key);
    if (it != lambda_by_month.end()) {
      row.observed = observed[key];
      row.expected = median_of(it->second) * days;
    } else {
      row.expected = model.mu * days;
    }
    rows.push_back(std::move(row));
    if (ym == year_month_of(end)) break;
  }
  return rows;
}

}  // namespace nphawkes
