#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crm/space.hpp"

namespace crm {

/// Self-mapping T: X -> X, either tabulated or from the registry.
///
/// Registry entries:
///   sqrt_clamped(lo, hi, c)  x -> sqrt(x) on [lo, hi], c elsewhere
///   const(c)                 x -> c
///   identity                 x -> x
struct MapSpec {
  enum class Kind { table, sqrt_clamped, constant, identity };

  Kind kind = Kind::identity;
  std::vector<std::pair<Point, Point>> entries;
  double lo = 0.0;
  double hi = 0.0;
  Point image;  // c for sqrt_clamped and const

  static MapSpec table(std::vector<std::pair<Point, Point>> entries);
  static MapSpec sqrt_clamped(double lo, double hi, Point outside);
  static MapSpec constant(Point c);
  static MapSpec identity();

  std::string name() const;
};

/// T(x). Numeric images already in the carrier (within kPointTolerance)
/// come back as the carrier point; new numeric images are adjoined exactly.
Point apply(const SpaceDef& space, const MapSpec& map, const Point& x);

enum class Scheme { banach, kannan, reich, fisher };
enum class FisherVariant { product, sum };

std::string to_string(Scheme s);
std::string to_string(FisherVariant v);
std::optional<Scheme> parse_scheme(const std::string& text);
std::optional<FisherVariant> parse_variant(const std::string& text);

/// The constants of one contraction inequality. `k` is k (banach, kannan)
/// or lambda (reich, fisher); `beta` is used by fisher only.
struct SchemeConstants {
  Scheme scheme = Scheme::banach;
  double k = 0.0;
  double beta = 0.0;
  FisherVariant variant = FisherVariant::product;
};

struct ContractionCertificate {
  SchemeConstants constants;
  double worst_ratio = 0.0;
  /// True when some pair has a zero denominator and a positive numerator.
  bool unbounded = false;
  std::optional<std::pair<Point, Point>> worst_pair;
  bool admissible = false;
  std::optional<double> decay_rate;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
};

/// Geometric rate of d(x_n, x_{n+1}) implied by admissible constants:
/// k, k/(1-k), 2l/(1-l), l/(1-b). The sum form of the rational inequality
/// only yields (l+b)/(1-b).
double decay_rate_for(const SchemeConstants& c);

/// Instance-by-instance check of a contraction inequality with fixed
/// constants over all unordered pairs of distinct carrier points. An
/// instance violates when lhs - rhs > tol.
struct BoundCheck {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<std::pair<Point, Point>> first_violation;
  double max_excess = 0.0;
};

BoundCheck check_bound(const SpaceDef& space, const MapSpec& map, const SchemeConstants& c, double tol);

/// Both sides of the inequality at one pair.
std::pair<double, double> bound_sides(const SpaceDef& space, const MapSpec& map, const SchemeConstants& c,
                                      const Point& x, const Point& y);

ContractionCertificate fit_banach(const SpaceDef& space, const MapSpec& map, double tol = 1e-9);
ContractionCertificate fit_kannan(const SpaceDef& space, const MapSpec& map, double tol = 1e-9);
ContractionCertificate fit_reich(const SpaceDef& space, const MapSpec& map, double tol = 1e-9);

/// Throws std::invalid_argument unless lambda, beta in (0,1) and
/// lambda + beta < 1.
ContractionCertificate check_fisher(const SpaceDef& space, const MapSpec& map, double lambda, double beta,
                                    FisherVariant variant = FisherVariant::product, double tol = 1e-9);

/// Coarse search over the admissible (lambda, beta) triangle; returns the
/// admissible pair with the smallest decay rate, if any.
std::optional<ContractionCertificate> search_fisher(const SpaceDef& space, const MapSpec& map,
                                                    FisherVariant variant = FisherVariant::product,
                                                    double tol = 1e-9, double step = 0.01);

}  // namespace crm
