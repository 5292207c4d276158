#include "crm/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t window_begin(std::size_t horizon) { return horizon - horizon / 4; }

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::fixed_point_reached: return "fixed_point_reached";
    case StopReason::eps_reached: return "eps_reached";
    case StopReason::max_iter: return "max_iter";
  }
  return "unknown";
}

OrbitTrace picard(const SpaceDef& space, const MapSpec& map, const Point& x0, const PicardOptions& opts) {
  if (!(opts.eps > 0.0)) throw std::invalid_argument("picard requires eps > 0");
  if (opts.max_iter < 1) throw std::invalid_argument("picard requires max_iter >= 1");
  OrbitTrace t;
  t.points.push_back(x0);
  for (std::size_t n = 0; n < opts.max_iter; ++n) {
    Point next = apply(space, map, t.points.back());
    const double d = space.distance(t.points.back(), next);
    t.points.push_back(std::move(next));
    t.step_dists.push_back(d);
    if (n + 1 < opts.min_iter) continue;
    if (d == 0.0) {
      t.stop_reason = StopReason::fixed_point_reached;
      t.fixed_point = t.points[n];
      break;
    }
    if (d <= opts.eps) {
      t.stop_reason = StopReason::eps_reached;
      t.fixed_point = t.points.back();
      break;
    }
  }
  if (!t.fixed_point) t.stop_reason = StopReason::max_iter;

  for (std::size_t n = 0; n + 2 < t.points.size(); ++n) {
    t.skip_dists.push_back(space.distance(t.points[n], t.points[n + 2]));
  }
  for (std::size_t n = 0; n + 1 < t.step_dists.size(); ++n) {
    if (t.step_dists[n] > 0.0) {
      t.decay_ratios.emplace_back(t.step_dists[n + 1] / t.step_dists[n]);
    } else {
      t.decay_ratios.emplace_back(std::nullopt);
    }
  }
  return t;
}

DecayReport decay_check(const OrbitTrace& trace, double rate, double tol) {
  if (trace.step_dists.empty()) throw std::invalid_argument("decay_check needs a nonempty trace");
  if (!(rate >= 0.0 && rate < 1.0)) throw std::invalid_argument("decay rate must lie in [0,1)");
  DecayReport r;
  r.rate = rate;
  const double d0 = trace.step_dists.front();
  for (std::size_t n = 0; n < trace.step_dists.size(); ++n) {
    const double envelope = std::pow(rate, static_cast<double>(n)) * d0;
    const double excess = trace.step_dists[n] - envelope;
    r.max_excess = std::max(r.max_excess, excess);
    if (excess > tol && !r.first_failure) {
      r.first_failure = n;
      r.holds = false;
    }
  }
  return r;
}

SkipReport skip_check(const OrbitTrace& trace, double tol) {
  if (trace.points.size() < 4) throw std::invalid_argument("skip_check needs at least 4 orbit points");
  SkipReport r;
  const std::size_t count = trace.skip_dists.size();
  const std::size_t tail = std::max<std::size_t>(1, count / 4);
  r.tail_begin = count - tail;
  for (std::size_t n = r.tail_begin; n < count; ++n) r.tail_max = std::max(r.tail_max, trace.skip_dists[n]);
  r.holds = r.tail_max <= tol;
  return r;
}

CauchyReport cauchy_probe(const SpaceDef& space, const OrbitTrace& trace, double tol) {
  if (trace.points.size() < 8) throw std::invalid_argument("cauchy_probe needs at least 8 orbit points");
  CauchyReport r;
  const std::size_t last = trace.points.size() - 1;
  r.tail_begin = last / 2;
  r.worst_n = r.tail_begin;
  r.worst_m = r.tail_begin + 1;
  for (std::size_t n = r.tail_begin; n <= last; ++n) {
    for (std::size_t m = n + 1; m <= last; ++m) {
      const double d = space.distance(trace.points[n], trace.points[m]);
      if (d > r.tail_max) {
        r.tail_max = d;
        r.worst_n = n;
        r.worst_m = m;
      }
    }
  }
  r.holds = r.tail_max <= tol;
  if (trace.fixed_point) {
    bool near = true;
    for (std::size_t n = r.tail_begin; n <= last && near; ++n) {
      near = space.distance(trace.points[n], *trace.fixed_point) <= tol;
    }
    r.tail_near_fixed_point = near;
  }
  return r;
}

ConditionEstimate condition_estimate(const SpaceDef& space, const MapSpec& map, const Point& x0,
                                     const SchemeConstants& c, const ConditionOptions& opts) {
  if (opts.horizon < 8) throw std::invalid_argument("condition_estimate needs horizon >= 8");
  ConditionEstimate out;
  out.scheme = c.scheme;
  out.horizon = opts.horizon;
  switch (c.scheme) {
    case Scheme::banach:
    case Scheme::kannan:
      out.rate_constant = c.k;
      break;
    case Scheme::reich:
      out.rate_constant = c.k;
      out.note = "reich threshold 1/k^2 evaluated with k := lambda";
      break;
    case Scheme::fisher:
      out.rate_constant = c.k + c.beta;
      break;
  }
  out.threshold = out.rate_constant > 0.0 ? 1.0 / (out.rate_constant * out.rate_constant) : kInf;

  const std::size_t h = opts.horizon;
  PicardOptions po;
  po.eps = opts.fixed_eps;
  po.max_iter = h + 3;
  po.min_iter = h + 3;
  const OrbitTrace orbit = picard(space, map, x0, po);
  const auto& x = orbit.points;
  auto alpha = [&](std::size_t a, std::size_t b) { return space.control(x[a], x[b]); };

  const std::size_t w0 = window_begin(h);
  out.estimate = -kInf;
  out.estimate_leading_i = -kInf;
  for (std::size_t i = w0; i <= h; ++i) {
    const double shift = (alpha(i + 1, i + 2) + alpha(i + 2, i + 3)) / (alpha(i, i + 1) + alpha(i + 1, i + 2));
    for (std::size_t m = 1; m <= h; ++m) {
      if (m >= i && m <= i + 3) continue;
      const double value = alpha(i + 1, m) * shift;
      out.ratio_values.push_back({i, m, value});
      out.estimate = std::max(out.estimate, value);
      out.estimate_leading_i = std::max(out.estimate_leading_i, alpha(i, m) * shift);
    }
  }
  out.holds = out.estimate < out.threshold - opts.tol;

  out.fixed_point = orbit.fixed_point;
  if (!out.fixed_point) {
    for (std::size_t a = 0; a < x.size() && !out.cycle_detected; ++a) {
      for (std::size_t b = a + 1; b < x.size(); ++b) {
        if (same_point(x[a], x[b])) {
          out.cycle_detected = true;
          break;
        }
      }
    }
  }

  // Boundedness of alpha along the tail against every carrier point.
  double xn_x = -kInf;
  double x_xn = -kInf;
  double xn_xm = -kInf;
  for (std::size_t n = w0; n <= h; ++n) {
    for (const auto& p : space.points()) {
      xn_x = std::max(xn_x, space.control(x[n], p));
      x_xn = std::max(x_xn, space.control(p, x[n]));
    }
    for (std::size_t m = w0; m <= h; ++m) {
      if (m != n) xn_xm = std::max(xn_xm, alpha(n, m));
    }
  }
  out.auxiliary_limits.push_back({"alpha(x_n,x)", xn_x, kInf, std::isfinite(xn_x)});
  out.auxiliary_limits.push_back({"alpha(x,x_n)", x_xn, kInf, std::isfinite(x_xn)});
  out.auxiliary_limits.push_back({"alpha(x_n,x_m)", xn_xm, kInf, std::isfinite(xn_xm)});
  out.alpha_limits_bounded = std::isfinite(xn_x) && std::isfinite(x_xn) && std::isfinite(xn_xm);

  auto tail_max = [&](auto&& f) {
    double v = -kInf;
    for (std::size_t n = w0; n <= h; ++n) v = std::max(v, f(n));
    return v;
  };
  auto add_limit = [&](std::string name, double estimate, double bound) {
    const bool ok = std::isfinite(estimate) && estimate < bound - opts.tol;
    out.auxiliary_limits.push_back({std::move(name), estimate, bound, ok});
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::optional<Point> tz;
  if (out.fixed_point) tz = apply(space, map, *out.fixed_point);

  switch (c.scheme) {
    case Scheme::banach:
      break;
    case Scheme::kannan: {
      const double bound = 1.0 / c.k;
      add_limit("alpha(Tx_n,Tz)", tz ? tail_max([&](std::size_t n) { return space.control(x[n + 1], *tz); }) : nan,
                bound);
      break;
    }
    case Scheme::reich: {
      const double bound = 1.0 / c.k;
      add_limit("alpha(x_n,T^2x_n)", tail_max([&](std::size_t n) { return alpha(n, n + 2); }), bound);
      add_limit("alpha(Tx_n,Tz)", tz ? tail_max([&](std::size_t n) { return space.control(x[n + 1], *tz); }) : nan,
                bound);
      add_limit("alpha(Tz,Tx_n)", tz ? tail_max([&](std::size_t n) { return space.control(*tz, x[n + 1]); }) : nan,
                bound);
      break;
    }
    case Scheme::fisher: {
      const double bound = 1.0 / (c.beta + c.k);
      add_limit("alpha(x_n,x_m)", xn_xm, bound);
      add_limit("alpha(x_n,z)",
                out.fixed_point ? tail_max([&](std::size_t n) { return space.control(x[n], *out.fixed_point); }) : nan,
                bound);
      break;
    }
  }
  return out;
}

AprioriReport apriori_bound(const SpaceDef& space, const OrbitTrace& trace, double k, double tol) {
  if (!trace.fixed_point) throw std::invalid_argument("apriori_bound needs an orbit with a fixed point");
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("apriori_bound needs k in (0,1)");
  const Point& z = *trace.fixed_point;

  std::vector<Point> support;
  auto add = [&](const Point& p) {
    for (const auto& q : support) {
      if (same_point(p, q)) return;
    }
    support.push_back(p);
  };
  for (const auto& p : trace.points) add(p);
  add(z);

  AprioriReport r;
  r.applicable = true;
  for (std::size_t a = 0; a < support.size() && r.applicable; ++a) {
    for (std::size_t b = 0; b < support.size() && r.applicable; ++b) {
      if (a == b) continue;
      for (std::size_t c = 0; c < support.size(); ++c) {
        if (c == a || c == b) continue;
        const double lhs = space.distance(support[a], support[b]);
        const double rhs = space.distance(support[a], support[c]) + space.distance(support[c], support[b]);
        if (lhs - rhs > tol) {
          r.applicable = false;
          break;
        }
      }
    }
  }

  const double d01 = trace.step_dists.empty() ? 0.0 : trace.step_dists.front();
  for (std::size_t n = 0; n < trace.points.size(); ++n) {
    const double bound = std::pow(k, static_cast<double>(n)) / (1.0 - k) * d01;
    const double actual = space.distance(trace.points[n], z);
    r.rows.push_back({n, actual, bound});
    if (actual > bound + tol && !r.first_failure) {
      r.first_failure = n;
      r.holds = false;
    }
  }
  return r;
}

UniquenessReport uniqueness_probe(const SpaceDef& space, const MapSpec& map, std::span<const Point> starts,
                                  double eps, std::size_t max_iter) {
  if (starts.size() < 2) throw std::invalid_argument("uniqueness_probe needs at least 2 starting points");
  UniquenessReport r;
  bool all_converged = true;
  for (const auto& s : starts) {
    PicardOptions po;
    po.eps = eps;
    po.max_iter = max_iter;
    const auto t = picard(space, map, s, po);
    StartOutcome o{s, t.fixed_point.has_value(), t.fixed_point, t.iterations(), t.stop_reason};
    all_converged = all_converged && o.converged;
    if (t.fixed_point) {
      const bool known = std::any_of(r.fixed_points.begin(), r.fixed_points.end(),
                                     [&](const Point& q) { return space.distance(q, *t.fixed_point) <= eps; });
      if (!known) r.fixed_points.push_back(*t.fixed_point);
    }
    r.starts.push_back(std::move(o));
  }
  r.unique = all_converged && r.fixed_points.size() == 1;
  return r;
}

}  // namespace crm
