#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crm/contraction.hpp"
#include "crm/space.hpp"

namespace crm {

enum class StopReason { fixed_point_reached, eps_reached, max_iter };

std::string to_string(StopReason r);

/// Picard orbit x_0, x_1 = T x_0, ... with per-step diagnostics.
struct OrbitTrace {
  std::vector<Point> points;
  std::vector<double> step_dists;  // d(x_n, x_{n+1})
  std::vector<double> skip_dists;  // d(x_n, x_{n+2})
  std::vector<std::optional<double>> decay_ratios;  // step[n+1] / step[n]
  StopReason stop_reason = StopReason::max_iter;
  std::optional<Point> fixed_point;

  std::size_t iterations() const { return step_dists.size(); }
};

struct PicardOptions {
  double eps = 1e-9;
  std::size_t max_iter = 1000;
  /// Stopping tests are skipped before this many steps; used to build
  /// orbits of a fixed horizon.
  std::size_t min_iter = 0;
};

/// Iterates until d(x_n, x_{n+1}) <= eps, an exact fixed point, or
/// max_iter steps.
OrbitTrace picard(const SpaceDef& space, const MapSpec& map, const Point& x0, const PicardOptions& opts = {});

struct DecayReport {
  double rate = 0.0;
  bool holds = true;
  std::optional<std::size_t> first_failure;
  double max_excess = 0.0;
};

/// step_dists[n] <= rate^n * step_dists[0] + tol for every n.
DecayReport decay_check(const OrbitTrace& trace, double rate, double tol = 1e-9);

struct SkipReport {
  bool holds = false;
  double tail_max = 0.0;
  std::size_t tail_begin = 0;
};

/// max of the last quarter of skip_dists <= tol. Needs at least 4 points.
SkipReport skip_check(const OrbitTrace& trace, double tol);

struct CauchyReport {
  bool holds = false;
  double tail_max = 0.0;
  std::size_t tail_begin = 0;
  std::size_t worst_n = 0;
  std::size_t worst_m = 0;
  /// Every tail point within tol of the detected fixed point; empty when
  /// no fixed point was found.
  std::optional<bool> tail_near_fixed_point;
};

/// Largest d(x_n, x_m), n < m, over the tail half of the orbit. Needs at
/// least 8 points.
CauchyReport cauchy_probe(const SpaceDef& space, const OrbitTrace& trace, double tol);

struct RatioSample {
  std::size_t i = 0;
  std::size_t m = 0;
  double value = 0.0;
};

struct AuxiliaryLimit {
  std::string name;
  double estimate = 0.0;
  double bound = 0.0;  // +inf when only finiteness is required
  bool holds = false;
};

/// Finite-horizon estimate of the alpha-ratio hypothesis
///   sup_m alpha(x_{i+1}, x_m) (alpha(x_{i+1},x_{i+2}) + alpha(x_{i+2},x_{i+3}))
///                            / (alpha(x_i,x_{i+1}) + alpha(x_{i+1},x_{i+2}))  <  1/r^2
/// with r = k (banach, kannan), lambda (reich) or lambda + beta (fisher).
/// This is an estimate over the last quarter of the horizon, not a proof.
struct ConditionEstimate {
  Scheme scheme = Scheme::banach;
  std::size_t horizon = 0;
  double rate_constant = 0.0;
  std::vector<RatioSample> ratio_values;
  double estimate = 0.0;
  /// Same maximum with alpha(x_i, x_m) as the leading factor.
  double estimate_leading_i = 0.0;
  double threshold = 0.0;
  bool holds = false;
  bool alpha_limits_bounded = false;
  std::vector<AuxiliaryLimit> auxiliary_limits;
  std::optional<Point> fixed_point;
  bool cycle_detected = false;
  std::string note;
};

struct ConditionOptions {
  std::size_t horizon = 64;
  double tol = 1e-9;
  double fixed_eps = 1e-9;
};

ConditionEstimate condition_estimate(const SpaceDef& space, const MapSpec& map, const Point& x0,
                                     const SchemeConstants& constants, const ConditionOptions& opts = {});

struct AprioriRow {
  std::size_t n = 0;
  double distance_to_fixed = 0.0;
  double bound = 0.0;
};

struct AprioriReport {
  /// The orbit and its limit satisfy the triangle inequality, so the
  /// classical estimate is binding; otherwise the rows are informational.
  bool applicable = false;
  bool holds = true;
  std::optional<std::size_t> first_failure;
  std::vector<AprioriRow> rows;
};

/// d(x_n, z) <= k^n / (1-k) d(x_0, x_1) + tol along the orbit. Throws
/// std::invalid_argument without a fixed point or with k outside (0,1).
AprioriReport apriori_bound(const SpaceDef& space, const OrbitTrace& trace, double k, double tol = 1e-9);

struct StartOutcome {
  Point start;
  bool converged = false;
  std::optional<Point> fixed_point;
  std::size_t iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
};

struct UniquenessReport {
  std::vector<StartOutcome> starts;
  std::vector<Point> fixed_points;  // pairwise farther apart than eps
  bool unique = false;
};

UniquenessReport uniqueness_probe(const SpaceDef& space, const MapSpec& map, std::span<const Point> starts,
                                  double eps, std::size_t max_iter);

}  // namespace crm
