#include "crm/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string_view>

namespace crm {

namespace {

bool within(double a, double b) { return std::abs(a - b) <= kPointTolerance; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_decimal(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool in_region(double v, const Interval& region) {
  return v >= region.lo - kPointTolerance && v <= region.hi + kPointTolerance;
}

double require_value(const Point& p, const char* what) {
  if (!p.value) throw SpaceError(std::string(what) + " needs a numeric point, got '" + p.label + "'");
  return *p.value;
}

}  // namespace

Point Point::numeric(double v) { return Point{format_real(v), v}; }

Point Point::numeric(double v, std::string label) { return Point{std::move(label), v}; }

Point Point::symbol(std::string label) { return Point{std::move(label), std::nullopt}; }

bool same_point(const Point& a, const Point& b) {
  if (a.value && b.value) return within(*a.value, *b.value);
  return a.label == b.label;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::optional<double> parse_real(const std::string& text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  auto num = parse_decimal(s.substr(0, slash));
  auto den = parse_decimal(s.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

ControlSpec ControlSpec::table(std::vector<ControlEntry> entries) {
  ControlSpec c;
  c.kind = ControlKind::table;
  c.entries = std::move(entries);
  return c;
}

ControlSpec ControlSpec::constant_value(double s) {
  ControlSpec c;
  c.kind = ControlKind::constant;
  c.constant = s;
  return c;
}

ControlSpec ControlSpec::max() {
  ControlSpec c;
  c.kind = ControlKind::max;
  return c;
}

ControlSpec ControlSpec::max_plus(double offset) {
  ControlSpec c;
  c.kind = ControlKind::max_plus;
  c.offset = offset;
  return c;
}

ControlSpec ControlSpec::sum_plus(double offset) {
  ControlSpec c;
  c.kind = ControlKind::sum_plus;
  c.offset = offset;
  return c;
}

ControlSpec ControlSpec::piecewise_max_plus(double offset, double lo, double hi, double else_value) {
  ControlSpec c;
  c.kind = ControlKind::piecewise_max_plus;
  c.offset = offset;
  c.region = Interval{lo, hi, 2};
  c.constant = else_value;
  return c;
}

std::string to_string(ControlKind kind) {
  switch (kind) {
    case ControlKind::table: return "table";
    case ControlKind::constant: return "const";
    case ControlKind::max: return "max";
    case ControlKind::max_plus: return "max_plus";
    case ControlKind::sum_plus: return "sum_plus";
    case ControlKind::piecewise_max_plus: return "piecewise_max_plus";
  }
  return "unknown";
}

std::string to_string(DistanceFallback fallback) {
  switch (fallback) {
    case DistanceFallback::none: return "none";
    case DistanceFallback::squared_difference: return "squared_difference";
    case DistanceFallback::abs_difference: return "abs_difference";
  }
  return "unknown";
}

std::vector<Point> materialize(const Carrier& carrier) {
  std::vector<Point> out;
  for (const auto& p : carrier.finite_points) {
    bool merged = false;
    for (const auto& q : out) {
      if (q.label == p.label) {
        bool same_value = (!q.value && !p.value) || (q.value && p.value && within(*q.value, *p.value));
        if (!same_value) throw SpaceError("point label '" + p.label + "' declared with conflicting values");
        merged = true;
        break;
      }
      if (q.value && p.value && within(*q.value, *p.value)) {
        throw SpaceError("points '" + q.label + "' and '" + p.label + "' have the same value");
      }
    }
    if (!merged) out.push_back(p);
  }

  std::vector<double> grid;
  for (const auto& iv : carrier.intervals) {
    if (!(iv.lo < iv.hi)) throw SpaceError("interval requires lo < hi");
    if (iv.grid_n < 2) throw SpaceError("interval requires grid_n >= 2");
    const double step = (iv.hi - iv.lo) / static_cast<double>(iv.grid_n - 1);
    for (std::size_t j = 0; j < iv.grid_n; ++j) {
      grid.push_back(j + 1 == iv.grid_n ? iv.hi : iv.lo + static_cast<double>(j) * step);
    }
  }
  std::sort(grid.begin(), grid.end());

  for (double v : grid) {
    bool dup = false;
    for (std::size_t i = 0; i < out.size() && !dup; ++i) {
      dup = out[i].value && within(*out[i].value, v);
    }
    if (!dup) out.push_back(Point::numeric(v));
  }
  return out;
}

SpaceDef SpaceDef::create(Carrier carrier, DistanceSpec distance, ControlSpec control) {
  SpaceDef s;
  s.points_ = materialize(carrier);
  s.carrier_ = std::move(carrier);

  for (std::size_t i = 0; i < distance.entries.size(); ++i) {
    const auto& e = distance.entries[i];
    if (same_point(e.x, e.y)) throw SpaceError("distance entry for (" + e.x.label + ", " + e.x.label + ")");
    if (!std::isfinite(e.d) || e.d < 0.0) {
      throw SpaceError("distance entry (" + e.x.label + ", " + e.y.label + ") must be a nonnegative real");
    }
    if (e.d == 0.0) throw SpaceError("zero distance between distinct points " + e.x.label + ", " + e.y.label);
    for (std::size_t j = 0; j < i; ++j) {
      const auto& f = distance.entries[j];
      bool same = same_point(e.x, f.x) && same_point(e.y, f.y);
      if (distance.symmetric_closure) same = same || (same_point(e.x, f.y) && same_point(e.y, f.x));
      if (same && e.d != f.d) {
        throw SpaceError("conflicting distance entries for (" + e.x.label + ", " + e.y.label + ")");
      }
    }
  }
  s.distance_ = std::move(distance);

  switch (control.kind) {
    case ControlKind::constant:
      if (!(control.constant >= 1.0)) throw SpaceError("const control requires s >= 1");
      break;
    case ControlKind::piecewise_max_plus:
      if (!(control.constant >= 1.0)) throw SpaceError("piecewise control else-value must be >= 1");
      if (!(control.region.lo <= control.region.hi)) throw SpaceError("piecewise control region requires lo <= hi");
      break;
    case ControlKind::table:
      for (const auto& e : control.entries) {
        if (!(e.alpha >= 1.0)) throw SpaceError("control table entry below 1 at (" + e.x.label + ", " + e.y.label + ")");
      }
      break;
    default:
      break;
  }
  s.control_ = std::move(control);

  for (std::size_t i = 0; i < s.points_.size(); ++i) {
    for (std::size_t j = i + 1; j < s.points_.size(); ++j) {
      (void)s.distance(s.points_[i], s.points_[j]);
      (void)s.distance(s.points_[j], s.points_[i]);
    }
  }
  return s;
}

std::optional<double> SpaceDef::explicit_distance(const Point& x, const Point& y) const {
  for (const auto& e : distance_.entries) {
    if (same_point(e.x, x) && same_point(e.y, y)) return e.d;
  }
  if (distance_.symmetric_closure) {
    for (const auto& e : distance_.entries) {
      if (same_point(e.x, y) && same_point(e.y, x)) return e.d;
    }
  }
  return std::nullopt;
}

double SpaceDef::distance(const Point& x, const Point& y) const {
  if (same_point(x, y)) return 0.0;
  if (auto d = explicit_distance(x, y)) return *d;
  if (distance_.fallback != DistanceFallback::none && x.value && y.value) {
    const double diff = std::abs(*x.value - *y.value);
    return distance_.fallback == DistanceFallback::squared_difference ? diff * diff : diff;
  }
  throw SpaceError("no distance defined for (" + x.label + ", " + y.label + ")");
}

double SpaceDef::control(const Point& x, const Point& y) const {
  double a = 0.0;
  switch (control_.kind) {
    case ControlKind::table: {
      std::optional<double> hit;
      for (const auto& e : control_.entries) {
        if (same_point(e.x, x) && same_point(e.y, y)) { hit = e.alpha; break; }
      }
      if (!hit) {
        for (const auto& e : control_.entries) {
          if (same_point(e.x, y) && same_point(e.y, x)) { hit = e.alpha; break; }
        }
      }
      // Diagonal entries only ever multiply d(x,x) = 0.
      if (!hit && same_point(x, y)) hit = 1.0;
      if (!hit) throw SpaceError("control table has no entry for (" + x.label + ", " + y.label + ")");
      a = *hit;
      break;
    }
    case ControlKind::constant:
      a = control_.constant;
      break;
    case ControlKind::max:
      a = std::max(require_value(x, "max control"), require_value(y, "max control"));
      break;
    case ControlKind::max_plus:
      a = std::max(require_value(x, "max_plus control"), require_value(y, "max_plus control")) + control_.offset;
      break;
    case ControlKind::sum_plus:
      a = require_value(x, "sum_plus control") + require_value(y, "sum_plus control") + control_.offset;
      break;
    case ControlKind::piecewise_max_plus:
      if (x.value && y.value && in_region(*x.value, control_.region) && in_region(*y.value, control_.region)) {
        a = std::max(*x.value, *y.value) + control_.offset;
      } else {
        a = control_.constant;
      }
      break;
  }
  if (!(a >= 1.0)) {
    throw SpaceError("control value " + format_real(a) + " below 1 at (" + x.label + ", " + y.label + ")");
  }
  return a;
}

std::optional<std::size_t> SpaceDef::find(const Point& p) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (same_point(points_[i], p)) return i;
  }
  return std::nullopt;
}

Point SpaceDef::resolve(double value) const {
  for (const auto& p : points_) {
    if (p.value && within(*p.value, value)) return p;
  }
  return Point::numeric(value);
}

std::optional<Point> SpaceDef::lookup(const std::string& text) const {
  for (const auto& p : points_) {
    if (p.label == text) return p;
  }
  if (auto v = parse_real(text)) {
    for (const auto& p : points_) {
      if (p.value && within(*p.value, *v)) return p;
    }
  }
  return std::nullopt;
}

SpaceDef SpaceDef::with_grid(std::size_t grid_n) const {
  Carrier c = carrier_;
  for (auto& iv : c.intervals) iv.grid_n = grid_n;
  return create(std::move(c), distance_, control_);
}

}  // namespace crm
