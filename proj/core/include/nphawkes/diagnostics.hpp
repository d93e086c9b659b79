#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nphawkes/catalog.hpp"
#include "nphawkes/intensity.hpp"

namespace nphawkes {

enum class ResidualLabel { Retained, Thinned, Simulated };

std::string_view to_string(ResidualLabel label);

struct ResidualPoint {
  double t = 0.0;
  ResidualLabel label = ResidualLabel::Retained;
};

// Super-thinned point set. Retained and thinned points partition the
// observed catalog; the residual process examined for uniformity is
// retained + simulated.
struct ResidualProcess {
  std::vector<ResidualPoint> points;  // sorted by time
  double b = 0.0;
  double T = 0.0;
  Date window_start_date{};

  std::vector<double> residual_times() const;  // retained + simulated
  int count(ResidualLabel label) const;
};

struct BSelector {
  enum class Kind { Median, Fixed };
  Kind kind = Kind::Median;
  double fixed_value = 0.0;

  static BSelector median() { return {Kind::Median, 0.0}; }
  static BSelector fixed(double value) { return {Kind::Fixed, value}; }
};

// Median of the fitted intensity over the observed events (mean of the
// central pair when n is even), or the fixed value.
double choose_b(const HawkesModel& model, const EventCatalog& catalog,
                const BSelector& selector);

// Thins each observed point with retention probability min{b/lambda(t_i), 1}
// (lambda over strictly-prior observed events, uniforms consumed in catalog
// order) and superposes candidates from a homogeneous rate-b stream kept
// with probability max{b - lambda(u), 0}/b, lambda evaluated against the
// full observed catalog. With a fixed seed, raising b can only extend the
// candidate stream, so retained points stay retained and the superposed
// count never drops.
ResidualProcess superthin(const HawkesModel& model, const EventCatalog& catalog,
                          double b, std::uint64_t seed);

struct UniformityReport {
  // One-sample KS against Uniform[0, T]; unset when the residual is empty.
  std::optional<double> ks_statistic;
  std::optional<double> ks_p_value;
  std::vector<std::pair<std::string, int>> monthly_histogram;
};

UniformityReport uniformity_tests(const ResidualProcess& residual);

// sup-norm distance between the empirical CDF of `times` and Uniform[0, T].
double ks_statistic_uniform(std::vector<double> times, double T);

// P(K > lambda) for the asymptotic Kolmogorov distribution,
// 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), clamped to [0, 1].
double kolmogorov_asymptotic_p(double lambda);

struct MonthlyExpected {
  std::string month;
  int observed = 0;
  double expected = 0.0;
};

// Observed counts against median-intensity expectations: for each month the
// median of lambda at that month's events times the month's in-window day
// count; months with no events fall back to mu * days.
std::vector<MonthlyExpected> monthly_expected(const HawkesModel& model,
                                              const EventCatalog& catalog);

}  // namespace nphawkes
