#pragma once

#include <vector>

#include "nphawkes/catalog.hpp"

namespace nphawkes {

// Step function on right-open bins [e_{l-1}, e_l); zero outside [e_0, e_L).
struct HistogramFunction {
  std::vector<double> edges;   // strictly increasing, size L+1
  std::vector<double> values;  // size L, all >= 0
};

void validate_histogram(const HistogramFunction& f);

// Bin index containing x, or -1 outside [e_0, e_L).
int find_bin(const HistogramFunction& f, double x);

double eval_step(const HistogramFunction& f, double x);

// Sum of value * bin width.
double step_integral(const HistogramFunction& f);

// Final edge of an open-ended mark bin ("9 or more victims"). Finite so the
// model serializes as plain JSON; no real victim count comes near it.
inline constexpr double kOpenMarkEdge = 1e9;

// Appends kOpenMarkEdge when the last edge is finite-looking, so explicit
// mark edges like {3,5,6,9} mean bins {[3,5),[5,6),[6,9),[9,+)}.
std::vector<double> with_open_mark_edge(std::vector<double> edges);

// Marked-temporal Hawkes intensity: lambda(t) = mu + sum g(t - t_i) k(m_i)
// over prior events. g is a probability density over elapsed days (integral
// 1, first edge 0); k multiplies productivity by parent victim count.
struct HawkesModel {
  double mu = 0.0;
  HistogramFunction g;
  HistogramFunction k;

  double g_value(double dt) const { return eval_step(g, dt); }
  // Marks at or above the last edge keep the last bin's value: the final
  // mark bin is open-ended.
  double k_value(double mark) const;
};

// Checks mu >= 0, g.edges[0] == 0 and integral(g) == 1 within 1e-8. A g that
// is identically zero is allowed: that is the degenerate pure-Poisson fit.
void validate_model(const HawkesModel& model);

// lambda(t) over events strictly earlier than t (ties at t_i == t excluded).
double conditional_intensity(const HawkesModel& model, double t,
                             const EventCatalog& history);

// lambda at each event over the events before it in catalog order; same-time
// predecessors (smaller source_row) count as earlier.
std::vector<double> intensity_at_events(const HawkesModel& model,
                                        const EventCatalog& catalog);

}  // namespace nphawkes
