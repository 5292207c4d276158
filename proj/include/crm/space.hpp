#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crm {

/// Numeric points closer than this are the same point.
inline constexpr double kPointTolerance = 1e-12;

/// Raised for malformed space definitions and unresolvable evaluations.
class SpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of the carrier. Numeric points carry a value; symbolic points
/// are identified by label alone.
struct Point {
  std::string label;
  std::optional<double> value;

  static Point numeric(double v);
  static Point numeric(double v, std::string label);
  static Point symbol(std::string label);

  bool is_numeric() const { return value.has_value(); }
};

/// Numeric points compare by value (within kPointTolerance), otherwise by
/// label.
bool same_point(const Point& a, const Point& b);

/// Formats a real with 15 significant digits, the label format for grid and
/// image points.
std::string format_real(double v);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t grid_n = 2;
};

struct Carrier {
  std::vector<Point> finite_points;
  std::vector<Interval> intervals;
};

enum class DistanceFallback { none, squared_difference, abs_difference };

struct DistanceEntry {
  Point x;
  Point y;
  double d = 0.0;
};

struct DistanceSpec {
  std::vector<DistanceEntry> entries;
  DistanceFallback fallback = DistanceFallback::none;
  bool symmetric_closure = true;
};

enum class ControlKind { table, constant, max, max_plus, sum_plus, piecewise_max_plus };

struct ControlEntry {
  Point x;
  Point y;
  double alpha = 1.0;
};

/// Coefficient function alpha: X x X -> [1, inf).
///
/// `offset` is the additive c of max_plus / sum_plus / piecewise_max_plus,
/// `constant` is s for const and the else-branch value for
/// piecewise_max_plus, and `region` is the interval where the piecewise rule
/// uses max{x,y}+c.
struct ControlSpec {
  ControlKind kind = ControlKind::constant;
  double constant = 1.0;
  double offset = 0.0;
  Interval region{};
  std::vector<ControlEntry> entries;

  static ControlSpec table(std::vector<ControlEntry> entries);
  static ControlSpec constant_value(double s);
  static ControlSpec max();
  static ControlSpec max_plus(double c);
  static ControlSpec sum_plus(double c);
  static ControlSpec piecewise_max_plus(double c, double lo, double hi, double else_value);
};

std::string to_string(ControlKind kind);
std::string to_string(DistanceFallback fallback);

/// The triple (X, d, alpha). Immutable once created; `create` validates the
/// definition and materializes the carrier.
class SpaceDef {
 public:
  static SpaceDef create(Carrier carrier, DistanceSpec distance, ControlSpec control);

  /// Finite points in declaration order, then grid points ascending, with
  /// numeric duplicates merged.
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool has_intervals() const { return !carrier_.intervals.empty(); }

  double distance(const Point& x, const Point& y) const;
  double control(const Point& x, const Point& y) const;

  /// Index of the carrier point equal to `p`, if any.
  std::optional<std::size_t> find(const Point& p) const;

  /// Carrier point with this value if present, else a fresh numeric point.
  Point resolve(double value) const;

  /// Carrier point matched by label first, then by numeric reading of the
  /// label (decimal or fraction).
  std::optional<Point> lookup(const std::string& text) const;

  const Carrier& carrier() const { return carrier_; }
  const DistanceSpec& distance_spec() const { return distance_; }
  const ControlSpec& control_spec() const { return control_; }

  /// Same space with every interval resampled at `grid_n` points.
  SpaceDef with_grid(std::size_t grid_n) const;

 private:
  SpaceDef() = default;

  std::optional<double> explicit_distance(const Point& x, const Point& y) const;

  Carrier carrier_;
  DistanceSpec distance_;
  ControlSpec control_;
  std::vector<Point> points_;
};

/// Deterministic materialization of a carrier. Throws SpaceError on
/// conflicting labels/values among the finite points.
std::vector<Point> materialize(const Carrier& carrier);

/// Parses a decimal ("0.25") or fraction ("1/9") literal.
std::optional<double> parse_real(const std::string& text);

}  // namespace crm
