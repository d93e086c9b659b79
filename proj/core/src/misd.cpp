#include "nphawkes/misd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nphawkes/errors.hpp"

namespace nphawkes {

double ProbabilityMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j <= i; ++j) s += p_[index(i, j)];
  return s;
}

double ProbabilityMatrix::diagonal_sum() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += p_[index(i, i)];
  return s;
}

double ProbabilityMatrix::triggered_sum() const {
  double s = 0.0;
  for (int i = 1; i < n_; ++i) {
    const std::size_t base = index(i, 0);
    for (int j = 0; j < i; ++j) s += p_[base + j];
  }
  return s;
}

double ProbabilityMatrix::max_abs_diff(const ProbabilityMatrix& other) const {
  if (other.n_ != n_) {
    throw ConfigError("probability matrices have different sizes");
  }
  double m = 0.0;
  for (std::size_t idx = 0; idx < p_.size(); ++idx) {
    m = std::max(m, std::abs(p_[idx] - other.p_[idx]));
  }
  return m;
}

ProbabilityMatrix init_probabilities(int n) {
  if (n < 0) throw ConfigError("event count must be >= 0");
  ProbabilityMatrix P(n);
  for (int i = 0; i < n; ++i) {
    const double v = 1.0 / static_cast<double>(i + 1);
    for (int j = 0; j <= i; ++j) P.at(i, j) = v;
  }
  return P;
}

namespace {

void check_time_edges(const std::vector<double>& edges) {
  if (edges.size() < 2) throw ConfigError("need at least two time edges");
  if (edges.front() != 0.0) throw ConfigError("first time edge must be 0");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw ConfigError("time edges must be strictly increasing");
    }
  }
}

void check_mark_edges(const std::vector<double>& edges) {
  if (edges.size() < 2) throw ConfigError("need at least two mark edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw ConfigError("mark edges must be strictly increasing");
    }
  }
}

int lag_bin_of(const std::vector<double>& edges, double dt) {
  if (dt < edges.front() || dt >= edges.back()) return -1;
  auto it = std::upper_bound(edges.begin(), edges.end(), dt);
  return static_cast<int>(it - edges.begin()) - 1;
}

// Last bin is open-ended above; marks below the first edge are unbinnable.
int mark_bin_of(const std::vector<double>& edges, double mark) {
  if (mark < edges.front()) return -1;
  if (mark >= edges.back()) return static_cast<int>(edges.size()) - 2;
  auto it = std::upper_bound(edges.begin(), edges.end(), mark);
  return static_cast<int>(it - edges.begin()) - 1;
}

std::string bin_label(const std::vector<double>& edges, int l) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[%g, %g)", edges[l], edges[l + 1]);
  return buf;
}

void check_matrix_matches(const ProbabilityMatrix& P,
                          const EventCatalog& catalog) {
  if (P.n() != catalog.n()) {
    throw ConfigError("probability matrix size does not match catalog");
  }
}

std::vector<int> mark_bins_for(const EventCatalog& catalog,
                               const std::vector<double>& mark_edges) {
  std::vector<int> bins(catalog.events.size());
  for (std::size_t j = 0; j < catalog.events.size(); ++j) {
    int b = mark_bin_of(mark_edges, catalog.events[j].mark);
    if (b < 0) {
      throw ConfigError("event mark " + std::to_string(catalog.events[j].mark) +
                        " lies below the first mark edge");
    }
    bins[j] = b;
  }
  return bins;
}

std::vector<int> mark_bin_counts(const std::vector<int>& bins, int n_bins,
                                 const std::vector<double>& edges) {
  std::vector<int> counts(static_cast<std::size_t>(n_bins), 0);
  for (int b : bins) ++counts[static_cast<std::size_t>(b)];
  for (int l = 0; l < n_bins; ++l) {
    if (counts[static_cast<std::size_t>(l)] == 0) {
      throw ConfigError("mark bin " + bin_label(edges, l) +
                        " contains no events");
    }
  }
  return counts;
}

}  // namespace

double m_step_background(const ProbabilityMatrix& P, double T) {
  if (!(T > 0.0)) throw ConfigError("window length must be positive");
  return P.diagonal_sum() / T;
}

HistogramFunction m_step_g(const ProbabilityMatrix& P,
                           const EventCatalog& catalog,
                           const std::vector<double>& time_edges) {
  check_time_edges(time_edges);
  check_matrix_matches(P, catalog);
  const auto& events = catalog.events;
  const std::size_t L = time_edges.size() - 1;

  std::vector<double> mass(L, 0.0);
  double eta = 0.0;
  for (int i = 1; i < catalog.n(); ++i) {
    for (int j = 0; j < i; ++j) {
      const double p = P(i, j);
      eta += p;
      int b = lag_bin_of(time_edges, events[i].t - events[j].t);
      if (b >= 0) mass[static_cast<std::size_t>(b)] += p;
    }
  }

  HistogramFunction g{time_edges, std::vector<double>(L, 0.0)};
  if (eta > 0.0) {
    for (std::size_t l = 0; l < L; ++l) {
      g.values[l] = mass[l] / ((time_edges[l + 1] - time_edges[l]) * eta);
    }
  }
  return g;
}

HistogramFunction m_step_k(const ProbabilityMatrix& P,
                           const EventCatalog& catalog,
                           const std::vector<double>& mark_edges) {
  check_mark_edges(mark_edges);
  check_matrix_matches(P, catalog);
  const int M = static_cast<int>(mark_edges.size()) - 1;

  const std::vector<int> bins = mark_bins_for(catalog, mark_edges);
  const std::vector<int> counts = mark_bin_counts(bins, M, mark_edges);

  std::vector<double> mass(static_cast<std::size_t>(M), 0.0);
  for (int i = 1; i < catalog.n(); ++i) {
    for (int j = 0; j < i; ++j) {
      mass[static_cast<std::size_t>(bins[static_cast<std::size_t>(j)])] +=
          P(i, j);
    }
  }

  HistogramFunction k{mark_edges, std::vector<double>(static_cast<std::size_t>(M), 0.0)};
  for (int l = 0; l < M; ++l) {
    k.values[static_cast<std::size_t>(l)] =
        mass[static_cast<std::size_t>(l)] /
        static_cast<double>(counts[static_cast<std::size_t>(l)]);
  }
  return k;
}

ProbabilityMatrix e_step(const HawkesModel& model,
                         const EventCatalog& catalog) {
  const auto& events = catalog.events;
  const int n = catalog.n();
  ProbabilityMatrix P(n);
  for (int i = 0; i < n; ++i) {
    double lambda = model.mu;
    for (int j = 0; j < i; ++j) {
      lambda += model.g_value(events[i].t - events[j].t) *
                model.k_value(events[j].mark);
    }
    if (!(lambda > 0.0)) {
      throw FitError("conditional intensity vanishes at event " +
                     std::to_string(i + 1) +
                     " (zero background and no triggering reach)");
    }
    for (int j = 0; j < i; ++j) {
      P.at(i, j) = model.g_value(events[i].t - events[j].t) *
                   model.k_value(events[j].mark) / lambda;
    }
    P.at(i, i) = model.mu / lambda;
  }
  return P;
}

std::vector<double> quantile_mark_edges(const EventCatalog& catalog,
                                        int quantiles) {
  if (quantiles < 1) throw ConfigError("mark quantile count must be >= 1");
  if (catalog.events.empty()) {
    throw ConfigError("cannot derive mark bins from an empty catalog");
  }
  std::vector<int> marks;
  marks.reserve(catalog.events.size());
  for (const Event& e : catalog.events) marks.push_back(e.mark);
  std::sort(marks.begin(), marks.end());

  std::vector<double> edges{static_cast<double>(marks.front())};
  const std::size_t n = marks.size();
  for (int q = 1; q < quantiles; ++q) {
    const std::size_t idx = n * static_cast<std::size_t>(q) /
                            static_cast<std::size_t>(quantiles);
    const double cut = static_cast<double>(marks[idx]);
    if (cut > edges.back()) edges.push_back(cut);
  }
  return with_open_mark_edge(std::move(edges));
}

std::vector<double> default_time_edges(double T) {
  if (!(T > 0.0)) throw ConfigError("window length must be positive");
  std::vector<double> edges{0.0};
  for (double anchor : {14.0, 91.0, 182.0, 365.0}) {
    if (anchor < T) edges.push_back(anchor);
  }
  edges.push_back(T);
  return edges;
}

namespace {

// Pairwise lag bins and per-event mark bins are fixed across iterations, so
// they are resolved once; every EM pass is then plain array arithmetic in
// the same index order as the standalone update functions.
class FitEngine {
 public:
  FitEngine(const EventCatalog& catalog, std::vector<double> time_edges,
            std::vector<double> mark_edges)
      : catalog_(catalog),
        time_edges_(std::move(time_edges)),
        mark_edges_(std::move(mark_edges)),
        n_(catalog.n()),
        mark_bins_(mark_bins_for(catalog, mark_edges_)),
        mark_counts_(mark_bin_counts(
            mark_bins_, static_cast<int>(mark_edges_.size()) - 1, mark_edges_)) {
    check_time_edges(time_edges_);
    const auto& events = catalog_.events;
    pair_lag_bin_.resize(ProbabilityMatrix::index(n_ - 1, n_ - 1) + 1, -1);
    for (int i = 1; i < n_; ++i) {
      const std::size_t base = ProbabilityMatrix::index(i, 0);
      for (int j = 0; j < i; ++j) {
        pair_lag_bin_[base + j] =
            lag_bin_of(time_edges_, events[i].t - events[j].t);
      }
    }
  }

  struct Update {
    HawkesModel model;
    double eta = 0.0;
    double truncated_mass = 0.0;
    std::vector<double> g_mass;
    std::vector<double> k_mass;
  };

  Update m_step(const ProbabilityMatrix& P, double T) const {
    const std::size_t L = time_edges_.size() - 1;
    const std::size_t M = mark_edges_.size() - 1;
    Update u;
    u.g_mass.assign(L, 0.0);
    u.k_mass.assign(M, 0.0);

    const auto& p = P.packed();
    for (int i = 1; i < n_; ++i) {
      const std::size_t base = ProbabilityMatrix::index(i, 0);
      for (int j = 0; j < i; ++j) {
        const double pij = p[base + j];
        u.eta += pij;
        const int b = pair_lag_bin_[base + j];
        if (b >= 0) {
          u.g_mass[static_cast<std::size_t>(b)] += pij;
        } else {
          u.truncated_mass += pij;
        }
        u.k_mass[static_cast<std::size_t>(mark_bins_[static_cast<std::size_t>(j)])] += pij;
      }
    }

    u.model.mu = P.diagonal_sum() / T;
    u.model.g.edges = time_edges_;
    u.model.g.values.assign(L, 0.0);
    if (u.eta > 0.0) {
      for (std::size_t l = 0; l < L; ++l) {
        u.model.g.values[l] =
            u.g_mass[l] / ((time_edges_[l + 1] - time_edges_[l]) * u.eta);
      }
    }
    u.model.k.edges = mark_edges_;
    u.model.k.values.assign(M, 0.0);
    for (std::size_t l = 0; l < M; ++l) {
      u.model.k.values[l] = u.k_mass[l] / static_cast<double>(mark_counts_[l]);
    }
    return u;
  }

  ProbabilityMatrix e_step(const HawkesModel& model) const {
    std::vector<double> kv(catalog_.events.size());
    for (std::size_t j = 0; j < kv.size(); ++j) {
      kv[j] = model.k.values[static_cast<std::size_t>(mark_bins_[j])];
    }

    ProbabilityMatrix P(n_);
    auto& p = P.packed();
    for (int i = 0; i < n_; ++i) {
      const std::size_t base = ProbabilityMatrix::index(i, 0);
      double lambda = model.mu;
      for (int j = 0; j < i; ++j) {
        const int b = pair_lag_bin_[base + j];
        const double w =
            b >= 0 ? model.g.values[static_cast<std::size_t>(b)] *
                         kv[static_cast<std::size_t>(j)]
                   : 0.0;
        p[base + j] = w;
        lambda += w;
      }
      if (!(lambda > 0.0)) {
        throw FitError("conditional intensity vanishes at event " +
                       std::to_string(i + 1) +
                       " (zero background and no triggering reach)");
      }
      for (int j = 0; j < i; ++j) p[base + j] /= lambda;
      p[base + static_cast<std::size_t>(i)] = model.mu / lambda;
    }
    return P;
  }

  const std::vector<int>& mark_counts() const { return mark_counts_; }

 private:
  const EventCatalog& catalog_;
  std::vector<double> time_edges_;
  std::vector<double> mark_edges_;
  int n_ = 0;
  std::vector<int> mark_bins_;
  std::vector<int> mark_counts_;
  std::vector<int> pair_lag_bin_;  // packed pair index -> lag bin, -1 truncated
};

StandardErrors errors_from(const FitEngine::Update& u,
                           const std::vector<double>& time_edges,
                           const std::vector<int>& mark_counts) {
  StandardErrors se;
  const std::size_t L = u.g_mass.size();
  const std::size_t M = u.k_mass.size();
  se.se_g.assign(L, 0.0);
  se.se_k.assign(M, 0.0);
  se.degenerate = !(u.eta > 0.0);
  if (se.degenerate) return se;

  for (std::size_t l = 0; l < L; ++l) {
    const double theta = u.g_mass[l] / u.eta;
    const double width = time_edges[l + 1] - time_edges[l];
    const double var =
        std::max(0.0, theta * (1.0 - theta)) / (u.eta * width * width);
    se.se_g[l] = std::sqrt(var);
  }
  for (std::size_t l = 0; l < M; ++l) {
    const double theta = u.k_mass[l] / u.eta;
    const double var = u.eta * std::max(0.0, theta * (1.0 - theta)) /
                       (static_cast<double>(mark_counts[l]) *
                        static_cast<double>(mark_counts[l]));
    se.se_k[l] = std::sqrt(var);
  }
  return se;
}

}  // namespace

FittedModel fit(const EventCatalog& catalog, const FitConfig& config,
                const IterationObserver& observer) {
  if (catalog.events.empty()) {
    throw ConfigError("cannot fit an empty catalog");
  }
  const double T = catalog.window_length_days;
  if (!(T > 0.0)) throw ConfigError("window length must be positive");
  if (!(config.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (config.max_iter < 1) throw ConfigError("max_iter must be >= 1");

  EventCatalog jittered;
  const EventCatalog* cat = &catalog;
  if (config.jitter_seed) {
    jittered = with_time_jitter(catalog, *config.jitter_seed);
    cat = &jittered;
  }

  std::vector<double> time_edges =
      config.time_edges.empty() ? default_time_edges(T) : config.time_edges;
  std::vector<double> mark_edges =
      config.mark_edges.empty()
          ? quantile_mark_edges(*cat, config.mark_quantiles)
          : with_open_mark_edge(config.mark_edges);
  check_mark_edges(mark_edges);

  FitEngine engine(*cat, time_edges, mark_edges);

  ProbabilityMatrix P = init_probabilities(cat->n());
  FittedModel fitted;
  fitted.P = std::move(P);

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    FitEngine::Update update = engine.m_step(fitted.P, T);
    ProbabilityMatrix next = engine.e_step(update.model);
    const double delta = next.max_abs_diff(fitted.P);
    fitted.P = std::move(next);
    fitted.iterations = iter;
    if (observer) {
      observer(IterationSnapshot{iter, fitted.P, update.model, update.eta,
                                 update.truncated_mass, delta});
    }
    if (delta < config.epsilon) {
      fitted.converged = true;
      break;
    }
  }

  // Recompute the model from the final P so the conservation identities
  // (mark consistency, g normalization, eta accounting) hold exactly.
  FitEngine::Update final_update = engine.m_step(fitted.P, T);
  fitted.model = std::move(final_update.model);
  fitted.eta_t = final_update.eta;
  fitted.truncated_mass = final_update.truncated_mass;
  fitted.degenerate = !(fitted.eta_t > 0.0);
  StandardErrors se = errors_from(final_update, time_edges, engine.mark_counts());
  fitted.se_g = std::move(se.se_g);
  fitted.se_k = std::move(se.se_k);
  return fitted;
}

StandardErrors standard_errors(const FittedModel& fitted,
                               const EventCatalog& catalog) {
  check_matrix_matches(fitted.P, catalog);
  const auto& time_edges = fitted.model.g.edges;
  const auto& mark_edges = fitted.model.k.edges;
  const auto& events = catalog.events;

  FitEngine::Update u;
  u.g_mass.assign(time_edges.size() - 1, 0.0);
  u.k_mass.assign(mark_edges.size() - 1, 0.0);
  const std::vector<int> bins = mark_bins_for(catalog, mark_edges);
  const std::vector<int> counts = mark_bin_counts(
      bins, static_cast<int>(mark_edges.size()) - 1, mark_edges);

  for (int i = 1; i < catalog.n(); ++i) {
    for (int j = 0; j < i; ++j) {
      const double p = fitted.P(i, j);
      u.eta += p;
      int b = lag_bin_of(time_edges, events[i].t - events[j].t);
      if (b >= 0) u.g_mass[static_cast<std::size_t>(b)] += p;
      u.k_mass[static_cast<std::size_t>(bins[static_cast<std::size_t>(j)])] += p;
    }
  }
  return errors_from(u, time_edges, counts);
}

OffspringStats offspring_stats(const FittedModel& fitted,
                               const EventCatalog& catalog,
                               double window_days) {
  if (!(window_days > 0.0)) throw ConfigError("window_days must be positive");
  check_matrix_matches(fitted.P, catalog);
  const auto& events = catalog.events;
  const double n = static_cast<double>(catalog.n());

  double eta = 0.0;
  double eta_within = 0.0;
  for (int i = 1; i < catalog.n(); ++i) {
    for (int j = 0; j < i; ++j) {
      const double p = fitted.P(i, j);
      eta += p;
      if (events[i].t - events[j].t <= window_days) eta_within += p;
    }
  }
  const double diag = fitted.P.diagonal_sum();

  OffspringStats stats;
  stats.window_days = window_days;
  if (catalog.n() > 0) {
    stats.mean_offspring = eta / n;
    stats.mean_offspring_within_window = eta_within / n;
    stats.diagonal_mass_fraction = diag / n;
  }
  if (catalog.window_length_days > 0.0) {
    stats.background_rate = diag / catalog.window_length_days;
  }
  return stats;
}

std::string p_matrix_sparse_csv(const ProbabilityMatrix& P, double min_value) {
  std::string out = "i,j,p\n";
  char buf[64];
  for (int i = 0; i < P.n(); ++i) {
    for (int j = 0; j <= i; ++j) {
      const double p = P(i, j);
      if (p > min_value) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", i + 1, j + 1, p);
        out += buf;
      }
    }
  }
  return out;
}

}  // namespace nphawkes
