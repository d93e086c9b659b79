#include "nphawkes/intensity.hpp"

#include <algorithm>
#include <cmath>

#include "nphawkes/errors.hpp"

namespace nphawkes {

void validate_histogram(const HistogramFunction& f) {
  if (f.edges.size() < 2) {
    throw ConfigError("histogram needs at least two edges");
  }
  if (f.values.size() + 1 != f.edges.size()) {
    throw ConfigError("histogram needs exactly one value per bin");
  }
  for (std::size_t i = 1; i < f.edges.size(); ++i) {
    if (!(f.edges[i] > f.edges[i - 1])) {
      throw ConfigError("histogram edges must be strictly increasing");
    }
  }
  for (double v : f.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("histogram values must be finite and >= 0");
    }
  }
}

int find_bin(const HistogramFunction& f, double x) {
  if (x < f.edges.front() || x >= f.edges.back()) return -1;
  auto it = std::upper_bound(f.edges.begin(), f.edges.end(), x);
  return static_cast<int>(it - f.edges.begin()) - 1;
}

double eval_step(const HistogramFunction& f, double x) {
  int bin = find_bin(f, x);
  return bin < 0 ? 0.0 : f.values[static_cast<std::size_t>(bin)];
}

double step_integral(const HistogramFunction& f) {
  double total = 0.0;
  for (std::size_t l = 0; l < f.values.size(); ++l) {
    total += f.values[l] * (f.edges[l + 1] - f.edges[l]);
  }
  return total;
}

std::vector<double> with_open_mark_edge(std::vector<double> edges) {
  if (edges.empty() || edges.back() < kOpenMarkEdge) {
    edges.push_back(kOpenMarkEdge);
  }
  return edges;
}

double HawkesModel::k_value(double mark) const {
  if (!k.values.empty() && mark >= k.edges.back()) return k.values.back();
  return eval_step(k, mark);
}

void validate_model(const HawkesModel& model) {
  if (!(model.mu >= 0.0) || !std::isfinite(model.mu)) {
    throw ConfigError("background rate mu must be finite and >= 0");
  }
  validate_histogram(model.g);
  validate_histogram(model.k);
  if (model.g.edges.front() != 0.0) {
    throw ConfigError("g must start at elapsed time 0");
  }
  const double mass = step_integral(model.g);
  const bool all_zero =
      std::all_of(model.g.values.begin(), model.g.values.end(),
                  [](double v) { return v == 0.0; });
  if (!all_zero && std::abs(mass - 1.0) > 1e-8) {
    throw ConfigError("g must integrate to 1, got " + std::to_string(mass));
  }
}

double conditional_intensity(const HawkesModel& model, double t,
                             const EventCatalog& history) {
  double lambda = model.mu;
  for (const Event& e : history.events) {
    if (e.t >= t) break;  // sorted; strict inequality excludes ties
    lambda += model.g_value(t - e.t) * model.k_value(e.mark);
  }
  return lambda;
}

std::vector<double> intensity_at_events(const HawkesModel& model,
                                        const EventCatalog& catalog) {
  const auto& events = catalog.events;
  std::vector<double> lambda(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    double acc = model.mu;
    for (std::size_t j = 0; j < i; ++j) {
      acc += model.g_value(events[i].t - events[j].t) *
             model.k_value(events[j].mark);
    }
    lambda[i] = acc;
  }
  return lambda;
}

}  // namespace nphawkes
