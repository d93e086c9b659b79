#pragma once

#include <cstdint>
#include <vector>

#include "nphawkes/catalog.hpp"
#include "nphawkes/intensity.hpp"
#include "nphawkes/rng.hpp"

namespace nphawkes {

// Empirical distribution over integer marks.
struct MarkDistribution {
  std::vector<std::pair<int, double>> pmf;  // sorted by mark, probs sum to 1
};

// Probabilities must be >= 0 and sum to 1 within 1e-12; marks >= 1, sorted.
void validate_mark_distribution(const MarkDistribution& dist);

int sample_mark(const MarkDistribution& dist, Rng& rng);

// Expected offspring per event under the mark law: sum P(m) k(m).
double branching_ratio(const HawkesModel& model, const MarkDistribution& dist);

struct SimConfig {
  HawkesModel model;
  double T = 0.0;
  MarkDistribution mark_distribution;
  std::uint64_t seed = 0;
  // Simulation refuses branching ratio >= 1 unless explicitly overridden.
  bool allow_supercritical = false;
  Date epoch{std::chrono::year{2000}, std::chrono::month{1},
             std::chrono::day{1}};  // calendar anchor for t = 0
};

// Homogeneous Poisson process on [0, T]: count ~ Poisson(rate*T), times
// i.i.d. uniform, returned sorted.
std::vector<double> simulate_homogeneous(double rate, double T,
                                         std::uint64_t seed);

// Offspring lag drawn by inverse CDF of the step density: bin picked by bin
// mass, position uniform within the bin.
double sample_triggering_lag(const HistogramFunction& g, Rng& rng);

// Branching simulation: Poisson(mu*T) background events with uniform times
// and i.i.d. marks; every event with mark m spawns Poisson(k(m)) offspring at
// lags drawn from g, recursively, dropping births past T. Each event draws
// from its own derived stream, so the result depends only on the seed.
EventCatalog simulate_hawkes(const SimConfig& config);

}  // namespace nphawkes
