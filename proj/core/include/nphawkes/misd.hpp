#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nphawkes/catalog.hpp"
#include "nphawkes/intensity.hpp"

namespace nphawkes {

// Lower-triangular branching-structure probabilities, packed row-major.
// p(i,j) for j < i is the probability event i was triggered by event j;
// p(i,i) the probability event i is a background event. Rows sum to 1.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix() = default;
  explicit ProbabilityMatrix(int n)
      : n_(n), p_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {}

  int n() const { return n_; }

  static std::size_t index(int i, int j) {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + static_cast<std::size_t>(j);
  }

  double operator()(int i, int j) const { return j > i ? 0.0 : p_[index(i, j)]; }
  double& at(int i, int j) { return p_[index(i, j)]; }

  const std::vector<double>& packed() const { return p_; }
  std::vector<double>& packed() { return p_; }

  double row_sum(int i) const;
  double diagonal_sum() const;
  double triggered_sum() const;  // eta_t: all mass strictly below the diagonal
  double max_abs_diff(const ProbabilityMatrix& other) const;
};

// p(i, .) = 1/i on row i (1-indexed): every candidate parent and the
// background share equally before the first iteration.
ProbabilityMatrix init_probabilities(int n);

// EM update steps. Sums run in fixed (i, then j) index order so results are
// reproducible bit for bit.
double m_step_background(const ProbabilityMatrix& P, double T);

// Triggering-time histogram: bin mass / (bin width * eta_t). Pair lags at or
// past the last edge contribute to eta_t but to no bin; that truncated mass
// drains back into the background over subsequent iterations. All-zero
// histogram when eta_t = 0 (pure Poisson).
HistogramFunction m_step_g(const ProbabilityMatrix& P,
                           const EventCatalog& catalog,
                           const std::vector<double>& time_edges);

// Mark-productivity histogram: expected offspring per parent in each mark
// bin. Throws ConfigError when a bin holds no events or a mark falls below
// the first edge.
HistogramFunction m_step_k(const ProbabilityMatrix& P,
                           const EventCatalog& catalog,
                           const std::vector<double>& mark_edges);

// Probability update from the current model. Throws FitError if the
// intensity vanishes at any event.
ProbabilityMatrix e_step(const HawkesModel& model, const EventCatalog& catalog);

// Mark bin edges at the requested empirical quantiles, snapped to observed
// integer mark values with duplicates merged; final bin open-ended.
std::vector<double> quantile_mark_edges(const EventCatalog& catalog,
                                        int quantiles);

// 0, 14, 91, 182, 365 (clipped to the window) with T as final catch-all.
std::vector<double> default_time_edges(double T);

struct FitConfig {
  std::vector<double> time_edges;  // empty -> default_time_edges(T)
  std::vector<double> mark_edges;  // explicit edges; empty -> quantiles
  int mark_quantiles = 4;
  double epsilon = 1e-5;
  int max_iter = 500;
  std::optional<std::uint64_t> jitter_seed;  // spread same-day events if set
};

struct FittedModel {
  HawkesModel model;
  ProbabilityMatrix P;
  int iterations = 0;
  bool converged = false;
  std::vector<double> se_g;
  std::vector<double> se_k;
  double eta_t = 0.0;
  // Triggered mass at lags past the last time edge (see m_step_g).
  double truncated_mass = 0.0;
  bool degenerate = false;  // eta_t == 0
};

// Per-iteration view for invariant checks and progress reporting. model and
// eta_t come from this iteration's M-step; P is the E-step result.
struct IterationSnapshot {
  int iteration = 0;
  const ProbabilityMatrix& P;
  const HawkesModel& model;
  double eta_t = 0.0;
  double truncated_mass = 0.0;
  double max_delta = 0.0;
};
using IterationObserver = std::function<void(const IterationSnapshot&)>;

// Alternates background/histogram updates with probability updates from the
// uniform initialization until max |delta p| < epsilon or max_iter. The
// returned model and standard errors are recomputed from the final P, so the
// conservation identities hold exactly. Non-convergence is not an error;
// converged records which exit was taken.
FittedModel fit(const EventCatalog& catalog, const FitConfig& config,
                const IterationObserver& observer = {});

struct StandardErrors {
  std::vector<double> se_g;
  std::vector<double> se_k;
  bool degenerate = false;  // eta_t = 0: SEs reported as 0
};

// Binomial-variance standard errors for the histogram estimators.
StandardErrors standard_errors(const FittedModel& fitted,
                               const EventCatalog& catalog);

struct OffspringStats {
  double mean_offspring = 0.0;
  double mean_offspring_within_window = 0.0;
  double diagonal_mass_fraction = 0.0;
  double background_rate = 0.0;
  double window_days = 0.0;
};

OffspringStats offspring_stats(const FittedModel& fitted,
                               const EventCatalog& catalog,
                               double window_days);

// Sparse triplet dump "i,j,p" (1-based) of entries above min_value.
std::string p_matrix_sparse_csv(const ProbabilityMatrix& P,
                                double min_value = 1e-12);

}  // namespace nphawkes
