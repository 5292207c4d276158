#include "crm/contraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point place(const SpaceDef& space, const Point& p) {
  if (p.value) return space.resolve(*p.value);
  if (auto i = space.find(p)) return space.points()[*i];
  return p;
}

struct PairData {
  std::size_t i = 0;
  std::size_t j = 0;
  double dxy = 0.0;
  double dx = 0.0;  // d(x, Tx)
  double dy = 0.0;  // d(y, Ty)
  double dt = 0.0;  // d(Tx, Ty)
};

std::vector<PairData> tabulate_pairs(const SpaceDef& space, const MapSpec& map) {
  const auto& pts = space.points();
  std::vector<Point> images;
  images.reserve(pts.size());
  for (const auto& p : pts) images.push_back(apply(space, map, p));
  std::vector<double> self(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) self[i] = space.distance(pts[i], images[i]);

  std::vector<PairData> out;
  out.reserve(pts.size() * (pts.size() > 0 ? pts.size() - 1 : 0) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      out.push_back({i, j, space.distance(pts[i], pts[j]), self[i], self[j], space.distance(images[i], images[j])});
    }
  }
  return out;
}

double rhs_of(const SchemeConstants& c, const PairData& p) {
  switch (c.scheme) {
    case Scheme::banach: return c.k * p.dxy;
    case Scheme::kannan: return c.k * (p.dx + p.dy);
    case Scheme::reich: return c.k * (p.dxy + p.dx + p.dy);
    case Scheme::fisher: {
      const double coupling = c.variant == FisherVariant::product ? p.dx * p.dy : p.dx + p.dy;
      return c.k * p.dxy + c.beta * coupling / (1.0 + p.dxy);
    }
  }
  return 0.0;
}

// Denominator of the fitted ratio d(Tx,Ty) / den.
double denominator(Scheme s, const PairData& p) {
  switch (s) {
    case Scheme::banach: return p.dxy;
    case Scheme::kannan: return p.dx + p.dy;
    case Scheme::reich: return p.dxy + p.dx + p.dy;
    case Scheme::fisher: break;
  }
  throw std::logic_error("fisher constants are checked, not fitted");
}

double admissibility_limit(Scheme s) {
  switch (s) {
    case Scheme::banach: return 1.0;
    case Scheme::kannan: return 0.5;
    case Scheme::reich: return 1.0 / 3.0;
    case Scheme::fisher: break;
  }
  return 1.0;
}

ContractionCertificate fit(const SpaceDef& space, const MapSpec& map, Scheme scheme, double tol) {
  const auto& pts = space.points();
  const auto pairs = tabulate_pairs(space, map);
  ContractionCertificate cert;
  cert.constants.scheme = scheme;
  cert.pairs_checked = pairs.size();
  const double limit = admissibility_limit(scheme);

  double worst = 0.0;
  std::optional<std::size_t> worst_at;
  std::optional<std::size_t> unbounded_at;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto& p = pairs[n];
    // The Banach-type hypothesis only constrains pairs with d(Tx,Ty) > 0.
    if (p.dt <= tol) continue;
    const double den = denominator(scheme, p);
    if (den <= tol) {
      if (!unbounded_at) unbounded_at = n;
      ++cert.violations;
      continue;
    }
    const double ratio = p.dt / den;
    if (ratio >= limit) ++cert.violations;
    if (!worst_at || ratio > worst) {
      worst = ratio;
      worst_at = n;
    }
  }

  if (unbounded_at) {
    cert.unbounded = true;
    cert.worst_ratio = kInf;
    cert.worst_pair = std::pair{pts[pairs[*unbounded_at].i], pts[pairs[*unbounded_at].j]};
  } else {
    cert.worst_ratio = worst;
    if (worst_at) cert.worst_pair = std::pair{pts[pairs[*worst_at].i], pts[pairs[*worst_at].j]};
  }
  cert.constants.k = cert.worst_ratio;
  cert.admissible = !cert.unbounded && cert.worst_ratio < limit;
  if (cert.admissible) cert.decay_rate = decay_rate_for(cert.constants);
  return cert;
}

void require_fisher_constants(double lambda, double beta) {
  if (!(lambda > 0.0 && lambda < 1.0 && beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("fisher constants must lie in (0,1)");
  }
  if (!(lambda + beta < 1.0)) throw std::invalid_argument("fisher constants require lambda + beta < 1");
}

ContractionCertificate check_fisher_pairs(const SpaceDef& space, const std::vector<PairData>& pairs,
                                          const SchemeConstants& c, double tol) {
  const auto& pts = space.points();
  ContractionCertificate cert;
  cert.constants = c;
  cert.pairs_checked = pairs.size();
  std::optional<std::size_t> worst_at;
  double worst = 0.0;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto& p = pairs[n];
    const double rhs = rhs_of(c, p);
    if (p.dt - rhs > tol) ++cert.violations;
    double ratio = 0.0;
    if (rhs > 0.0) {
      ratio = p.dt / rhs;
    } else if (p.dt > tol) {
      ratio = kInf;
    }
    if (!worst_at || ratio > worst) {
      worst = ratio;
      worst_at = n;
    }
  }
  cert.worst_ratio = worst;
  cert.unbounded = std::isinf(worst);
  if (worst_at) cert.worst_pair = std::pair{pts[pairs[*worst_at].i], pts[pairs[*worst_at].j]};
  cert.admissible = cert.violations == 0;
  if (cert.admissible) {
    const double rate = decay_rate_for(c);
    if (rate < 1.0) cert.decay_rate = rate;
  }
  return cert;
}

}  // namespace

MapSpec MapSpec::table(std::vector<std::pair<Point, Point>> entries) {
  MapSpec m;
  m.kind = Kind::table;
  m.entries = std::move(entries);
  return m;
}

MapSpec MapSpec::sqrt_clamped(double lo, double hi, Point outside) {
  MapSpec m;
  m.kind = Kind::sqrt_clamped;
  m.lo = lo;
  m.hi = hi;
  m.image = std::move(outside);
  return m;
}

MapSpec MapSpec::constant(Point c) {
  MapSpec m;
  m.kind = Kind::constant;
  m.image = std::move(c);
  return m;
}

MapSpec MapSpec::identity() { return MapSpec{}; }

std::string MapSpec::name() const {
  switch (kind) {
    case Kind::table: return "table";
    case Kind::sqrt_clamped: return "sqrt_clamped";
    case Kind::constant: return "const";
    case Kind::identity: return "identity";
  }
  return "unknown";
}

Point apply(const SpaceDef& space, const MapSpec& map, const Point& x) {
  switch (map.kind) {
    case MapSpec::Kind::identity:
      return x;
    case MapSpec::Kind::constant:
      return place(space, map.image);
    case MapSpec::Kind::sqrt_clamped:
      if (x.value && *x.value >= map.lo - kPointTolerance && *x.value <= map.hi + kPointTolerance) {
        return space.resolve(std::sqrt(*x.value));
      }
      return place(space, map.image);
    case MapSpec::Kind::table:
      for (const auto& [from, to] : map.entries) {
        if (same_point(from, x)) return place(space, to);
      }
      throw SpaceError("map table has no entry for '" + x.label + "'");
  }
  return x;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::banach: return "banach";
    case Scheme::kannan: return "kannan";
    case Scheme::reich: return "reich";
    case Scheme::fisher: return "fisher";
  }
  return "unknown";
}

std::string to_string(FisherVariant v) { return v == FisherVariant::product ? "product" : "sum"; }

std::optional<Scheme> parse_scheme(const std::string& text) {
  if (text == "banach") return Scheme::banach;
  if (text == "kannan") return Scheme::kannan;
  if (text == "reich") return Scheme::reich;
  if (text == "fisher") return Scheme::fisher;
  return std::nullopt;
}

std::optional<FisherVariant> parse_variant(const std::string& text) {
  if (text == "product") return FisherVariant::product;
  if (text == "sum") return FisherVariant::sum;
  return std::nullopt;
}

double decay_rate_for(const SchemeConstants& c) {
  switch (c.scheme) {
    case Scheme::banach: return c.k;
    case Scheme::kannan: return c.k / (1.0 - c.k);
    case Scheme::reich: return 2.0 * c.k / (1.0 - c.k);
    case Scheme::fisher:
      return c.variant == FisherVariant::product ? c.k / (1.0 - c.beta) : (c.k + c.beta) / (1.0 - c.beta);
  }
  return 1.0;
}

std::pair<double, double> bound_sides(const SpaceDef& space, const MapSpec& map, const SchemeConstants& c,
                                      const Point& x, const Point& y) {
  const Point tx = apply(space, map, x);
  const Point ty = apply(space, map, y);
  PairData p{0, 0, space.distance(x, y), space.distance(x, tx), space.distance(y, ty), space.distance(tx, ty)};
  return {p.dt, rhs_of(c, p)};
}

BoundCheck check_bound(const SpaceDef& space, const MapSpec& map, const SchemeConstants& c, double tol) {
  const auto& pts = space.points();
  BoundCheck out;
  for (const auto& p : tabulate_pairs(space, map)) {
    if (c.scheme == Scheme::banach && p.dt <= tol) continue;
    ++out.checked;
    const double excess = p.dt - rhs_of(c, p);
    if (excess > tol) {
      if (!out.first_violation) out.first_violation = std::pair{pts[p.i], pts[p.j]};
      ++out.violations;
    }
    out.max_excess = std::max(out.max_excess, excess);
  }
  return out;
}

ContractionCertificate fit_banach(const SpaceDef& space, const MapSpec& map, double tol) {
  return fit(space, map, Scheme::banach, tol);
}

ContractionCertificate fit_kannan(const SpaceDef& space, const MapSpec& map, double tol) {
  return fit(space, map, Scheme::kannan, tol);
}

ContractionCertificate fit_reich(const SpaceDef& space, const MapSpec& map, double tol) {
  return fit(space, map, Scheme::reich, tol);
}

ContractionCertificate check_fisher(const SpaceDef& space, const MapSpec& map, double lambda, double beta,
                                    FisherVariant variant, double tol) {
  require_fisher_constants(lambda, beta);
  return check_fisher_pairs(space, tabulate_pairs(space, map), {Scheme::fisher, lambda, beta, variant}, tol);
}

std::optional<ContractionCertificate> search_fisher(const SpaceDef& space, const MapSpec& map,
                                                    FisherVariant variant, double tol, double step) {
  if (!(step > 0.0 && step < 0.5)) throw std::invalid_argument("fisher search step must lie in (0, 0.5)");
  const auto pairs = tabulate_pairs(space, map);
  const auto steps = static_cast<int>(std::floor(1.0 / step + 0.5));
  std::optional<ContractionCertificate> best;
  for (int a = 1; a < steps; ++a) {
    for (int b = 1; a + b < steps; ++b) {
      const double lambda = a * step;
      const double beta = b * step;
      auto cert = check_fisher_pairs(space, pairs, {Scheme::fisher, lambda, beta, variant}, tol);
      if (!cert.admissible || !cert.decay_rate) continue;
      if (!best || *cert.decay_rate < *best->decay_rate) best = std::move(cert);
    }
  }
  return best;
}

}  // namespace crm
