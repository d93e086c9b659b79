#include "nphawkes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "nphawkes/errors.hpp"

namespace nphawkes {

void validate_mark_distribution(const MarkDistribution& dist) {
  if (dist.pmf.empty()) throw ConfigError("mark distribution is empty");
  double total = 0.0;
  int prev = 0;
  for (const auto& [mark, prob] : dist.pmf) {
    if (mark < 1) throw ConfigError("marks must be >= 1");
    if (mark <= prev) throw ConfigError("marks must be strictly increasing");
    if (!(prob >= 0.0)) throw ConfigError("mark probabilities must be >= 0");
    total += prob;
    prev = mark;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("mark probabilities sum to " + std::to_string(total) +
                      ", expected 1");
  }
}

int sample_mark(const MarkDistribution& dist, Rng& rng) {
  const double u = rng.uniform01();
  double cdf = 0.0;
  for (const auto& [mark, prob] : dist.pmf) {
    cdf += prob;
    if (u < cdf) return mark;
  }
  return dist.pmf.back().first;
}

double branching_ratio(const HawkesModel& model, const MarkDistribution& dist) {
  double rho = 0.0;
  for (const auto& [mark, prob] : dist.pmf) {
    rho += prob * model.k_value(mark);
  }
  return rho;
}

std::vector<double> simulate_homogeneous(double rate, double T,
                                         std::uint64_t seed) {
  if (rate < 0.0) throw ConfigError("rate must be >= 0");
  if (!(T > 0.0)) throw ConfigError("window length must be positive");
  Rng rng(seed);
  const std::uint64_t count = rng.poisson(rate * T);
  std::vector<double> times(count);
  for (auto& t : times) t = rng.uniform01() * T;
  std::sort(times.begin(), times.end());
  return times;
}

double sample_triggering_lag(const HistogramFunction& g, Rng& rng) {
  double total = step_integral(g);
  if (!(total > 0.0)) {
    throw ConfigError("cannot sample lags from an all-zero density");
  }
  const double u = rng.uniform01() * total;
  double cdf = 0.0;
  std::size_t bin = g.values.size() - 1;
  for (std::size_t l = 0; l < g.values.size(); ++l) {
    cdf += g.values[l] * (g.edges[l + 1] - g.edges[l]);
    if (u < cdf) {
      bin = l;
      break;
    }
  }
  return g.edges[bin] + rng.uniform01() * (g.edges[bin + 1] - g.edges[bin]);
}

EventCatalog simulate_hawkes(const SimConfig& config) {
  validate_model(config.model);
  validate_mark_distribution(config.mark_distribution);
  if (!(config.T > 0.0)) throw ConfigError("window length must be positive");

  const double rho = branching_ratio(config.model, config.mark_distribution);
  if (rho >= 1.0 && !config.allow_supercritical) {
    throw ConfigError("branching ratio " + std::to_string(rho) +
                      " is supercritical (>= 1); refusing without override");
  }
  if (rho > 0.0 && !(step_integral(config.model.g) > 0.0)) {
    throw ConfigError(
        "triggering density is identically zero but productivity is positive");
  }

  struct Pending {
    double t;
    int mark;
    std::uint64_t id;
  };

  // Stream 0 seeds the background; event ids 0,1,... (assigned in spawn
  // order) each seed their own offspring stream.
  Rng root = Rng::derive(config.seed, 0);
  std::uint64_t next_id = 0;
  std::deque<Pending> queue;

  const std::uint64_t n_background = root.poisson(config.model.mu * config.T);
  for (std::uint64_t b = 0; b < n_background; ++b) {
    const double t = root.uniform01() * config.T;
    const int mark = sample_mark(config.mark_distribution, root);
    queue.push_back(Pending{t, mark, next_id++});
  }

  std::vector<Pending> born(queue.begin(), queue.end());
  while (!queue.empty()) {
    const Pending parent = queue.front();
    queue.pop_front();
    Rng stream = Rng::derive(config.seed, 1 + parent.id);
    const double productivity = config.model.k_value(parent.mark);
    const std::uint64_t n_children = stream.poisson(productivity);
    for (std::uint64_t c = 0; c < n_children; ++c) {
      const double lag = sample_triggering_lag(config.model.g, stream);
      const double t = parent.t + lag;
      const int mark = sample_mark(config.mark_distribution, stream);
      if (t > config.T) continue;
      Pending child{t, mark, next_id++};
      queue.push_back(child);
      born.push_back(child);
    }
  }

  std::sort(born.begin(), born.end(), [](const Pending& a, const Pending& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.id < b.id;
  });

  EventCatalog catalog;
  catalog.window_start_date = config.epoch;
  catalog.window_length_days = config.T;
  catalog.events.reserve(born.size());
  for (const Pending& e : born) {
    catalog.events.push_back(
        Event{e.t, e.mark, static_cast<int>(e.id)});
  }
  validate_catalog(catalog);
  return catalog;
}

}  // namespace nphawkes
