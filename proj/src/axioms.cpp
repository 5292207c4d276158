#include "crm/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

namespace crm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double triangle_rhs(const AxiomSystem& sys, double dxz, double dzy, double axz, double azy) {
  switch (sys.tag) {
    case SystemTag::metric: return dxz + dzy;
    case SystemTag::b_metric: return sys.s * (dxz + dzy);
    case SystemTag::controlled_metric: return axz * dxz + azy * dzy;
    default: break;
  }
  throw std::logic_error("not a triangle-type system: " + sys.name());
}

double rectangle_rhs(const AxiomSystem& sys, double dxu, double duv, double dvy, double axu, double auv,
                     double avy, double axy) {
  switch (sys.tag) {
    case SystemTag::rectangular: return dxu + duv + dvy;
    case SystemTag::rect_b_metric: return sys.s * (dxu + duv + dvy);
    case SystemTag::extended_rect_b: return axy * (dxu + duv + dvy);
    case SystemTag::controlled_rect: return axu * dxu + auv * duv + avy * dvy;
    default: break;
  }
  throw std::logic_error("not a rectangle-type system: " + sys.name());
}

bool uses_control(SystemTag tag) {
  return tag == SystemTag::controlled_metric || tag == SystemTag::extended_rect_b ||
         tag == SystemTag::controlled_rect;
}

struct Matrices {
  std::size_t n = 0;
  std::vector<double> d;
  std::vector<double> a;
  double dist(std::size_t i, std::size_t j) const { return d[i * n + j]; }
  double alpha(std::size_t i, std::size_t j) const { return a.empty() ? 1.0 : a[i * n + j]; }
};

Matrices tabulate(const SpaceDef& space, bool with_control) {
  Matrices m;
  const auto& pts = space.points();
  m.n = pts.size();
  m.d.resize(m.n * m.n);
  if (with_control) m.a.resize(m.n * m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      m.d[i * m.n + j] = space.distance(pts[i], pts[j]);
      if (with_control && i != j) m.a[i * m.n + j] = space.control(pts[i], pts[j]);
    }
  }
  if (with_control) {
    for (std::size_t i = 0; i < m.n; ++i) m.a[i * m.n + i] = 1.0;
  }
  return m;
}

struct Partial {
  std::optional<std::array<std::size_t, 4>> first;
  InstanceValue first_value;
  double min_margin = kInf;
  std::size_t count = 0;
};

// Scans rows x in [x_begin, x_end) in lexicographic order.
Partial scan_rows(const Matrices& m, const AxiomSystem& sys, double tol, std::size_t x_begin, std::size_t x_end,
                  std::vector<double>* pair_worst) {
  Partial out;
  const std::size_t n = m.n;
  const bool rect = sys.intermediates() == 2;
  for (std::size_t x = x_begin; x < x_end; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      const double lhs = m.dist(x, y);
      double row_worst = kInf;
      for (std::size_t u = 0; u < n; ++u) {
        if (u == x || u == y) continue;
        if (!rect) {
          const double rhs = triangle_rhs(sys, m.dist(x, u), m.dist(u, y), m.alpha(x, u), m.alpha(u, y));
          const double margin = rhs - lhs;
          ++out.count;
          out.min_margin = std::min(out.min_margin, margin);
          row_worst = std::min(row_worst, margin);
          if (!out.first && lhs - rhs > tol) {
            out.first = std::array<std::size_t, 4>{x, y, u, 0};
            out.first_value = {lhs, rhs};
          }
          continue;
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (v == x || v == y || v == u) continue;
          const double rhs = rectangle_rhs(sys, m.dist(x, u), m.dist(u, v), m.dist(v, y), m.alpha(x, u),
                                           m.alpha(u, v), m.alpha(v, y), m.alpha(x, y));
          const double margin = rhs - lhs;
          ++out.count;
          out.min_margin = std::min(out.min_margin, margin);
          if (!out.first && lhs - rhs > tol) {
            out.first = std::array<std::size_t, 4>{x, y, u, v};
            out.first_value = {lhs, rhs};
          }
        }
      }
      if (pair_worst) (*pair_worst)[x * n + y] = row_worst;
    }
  }
  return out;
}

std::optional<Witness> check_d1_d2(const SpaceDef& space, const Matrices& m, double tol) {
  const auto& pts = space.points();
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      if (i == j) continue;
      if (m.dist(i, j) <= 0.0) {
        return Witness{"d1", pts[i], pts[j], {}, m.dist(i, j), 0.0, 0.0};
      }
      if (m.dist(i, j) - m.dist(j, i) > tol) {
        return Witness{"d2", pts[i], pts[j], {}, m.dist(i, j), m.dist(j, i), m.dist(j, i) - m.dist(i, j)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t AxiomSystem::intermediates() const {
  switch (tag) {
    case SystemTag::metric:
    case SystemTag::b_metric:
    case SystemTag::controlled_metric:
      return 1;
    default:
      return 2;
  }
}

std::string AxiomSystem::name() const {
  switch (tag) {
    case SystemTag::metric: return "metric";
    case SystemTag::b_metric: return "b_metric(" + format_real(s) + ")";
    case SystemTag::rect_b_metric: return "rect_b_metric(" + format_real(s) + ")";
    case SystemTag::rectangular: return "rectangular";
    case SystemTag::controlled_metric: return "controlled_metric";
    case SystemTag::extended_rect_b: return "extended_rect_b";
    case SystemTag::controlled_rect: return "controlled_rect";
  }
  return "unknown";
}

std::optional<SystemTag> parse_system(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), '_', '-');
  if (t == "metric") return SystemTag::metric;
  if (t == "b-metric") return SystemTag::b_metric;
  if (t == "rect-b-metric") return SystemTag::rect_b_metric;
  if (t == "rectangular") return SystemTag::rectangular;
  if (t == "controlled-metric") return SystemTag::controlled_metric;
  if (t == "extended-rect-b") return SystemTag::extended_rect_b;
  if (t == "controlled-rect") return SystemTag::controlled_rect;
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::satisfied_on_grid: return "satisfied-on-grid";
    case Verdict::violated: return "violated";
    case Verdict::vacuous: return "vacuous";
  }
  return "unknown";
}

InstanceValue evaluate_instance(const SpaceDef& space, const AxiomSystem& system, const Point& x, const Point& y,
                                std::span<const Point> mid) {
  if (mid.size() != system.intermediates()) {
    throw std::invalid_argument(system.name() + " takes " + std::to_string(system.intermediates()) +
                                " intermediate point(s)");
  }
  const bool ctl = uses_control(system.tag);
  auto a = [&](const Point& p, const Point& q) { return ctl ? space.control(p, q) : 1.0; };
  InstanceValue out;
  out.lhs = space.distance(x, y);
  if (mid.size() == 1) {
    const Point& z = mid[0];
    out.rhs = triangle_rhs(system, space.distance(x, z), space.distance(z, y), a(x, z), a(z, y));
  } else {
    const Point& u = mid[0];
    const Point& v = mid[1];
    const double axy = system.tag == SystemTag::extended_rect_b ? a(x, y) : 1.0;
    const double axu = system.tag == SystemTag::controlled_rect ? a(x, u) : 1.0;
    const double auv = system.tag == SystemTag::controlled_rect ? a(u, v) : 1.0;
    const double avy = system.tag == SystemTag::controlled_rect ? a(v, y) : 1.0;
    out.rhs = rectangle_rhs(system, space.distance(x, u), space.distance(u, v), space.distance(v, y), axu, auv,
                            avy, axy);
  }
  return out;
}

AxiomReport verify(const SpaceDef& space, const AxiomSystem& system, const VerifyOptions& opts) {
  if ((system.tag == SystemTag::b_metric || system.tag == SystemTag::rect_b_metric) && !(system.s >= 1.0)) {
    throw std::invalid_argument("b-metric constant must be >= 1");
  }
  AxiomReport report;
  report.system = system;
  const Matrices m = tabulate(space, uses_control(system.tag));
  const auto& pts = space.points();

  if (auto w = check_d1_d2(space, m, opts.tol)) {
    report.verdict = Verdict::violated;
    report.witness = std::move(w);
  }

  std::vector<double> pair_worst;
  const bool want_pairs = system.tag == SystemTag::controlled_metric;
  if (want_pairs) pair_worst.assign(m.n * m.n, kInf);
  auto* pw = want_pairs ? &pair_worst : nullptr;

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(m.n, 1))));
  std::vector<Partial> parts(jobs);
  if (jobs == 1) {
    parts[0] = scan_rows(m, system, opts.tol, 0, m.n, pw);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (m.n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t b = std::min(m.n, j * chunk);
      const std::size_t e = std::min(m.n, b + chunk);
      workers.emplace_back([&, j, b, e] { parts[j] = scan_rows(m, system, opts.tol, b, e, pw); });
    }
  }

  // Partitions cover ascending x ranges, so the first partition holding a
  // violation holds the lexicographically smallest one.
  for (const auto& p : parts) {
    report.checked_count += p.count;
    report.min_margin = std::min(report.min_margin, p.min_margin);
    if (!report.witness && p.first) {
      const auto& idx = *p.first;
      Witness w;
      w.axiom = "d3";
      w.x = pts[idx[0]];
      w.y = pts[idx[1]];
      w.intermediates.push_back(pts[idx[2]]);
      if (system.intermediates() == 2) w.intermediates.push_back(pts[idx[3]]);
      w.lhs = p.first_value.lhs;
      w.rhs = p.first_value.rhs;
      w.margin = p.first_value.margin();
      report.witness = std::move(w);
    }
  }

  if (want_pairs) {
    for (std::size_t i = 0; i < m.n; ++i) {
      for (std::size_t j = 0; j < m.n; ++j) {
        if (i != j && std::isfinite(pair_worst[i * m.n + j])) {
          report.pair_margins.push_back({pts[i], pts[j], pair_worst[i * m.n + j]});
        }
      }
    }
  }

  if (report.witness) {
    report.verdict = Verdict::violated;
  } else if (report.checked_count == 0) {
    report.verdict = Verdict::vacuous;
  } else {
    report.verdict = space.has_intervals() ? Verdict::satisfied_on_grid : Verdict::satisfied;
  }
  return report;
}

bool Classification::lattice_ok() const {
  return std::all_of(lattice.begin(), lattice.end(), [](const LatticeCheck& c) { return c.ok(); });
}

const AxiomReport* Classification::find(SystemTag tag) const {
  for (const auto& r : reports) {
    if (r.system.tag == tag) return &r;
  }
  return nullptr;
}

Classification classify(const SpaceDef& space, const VerifyOptions& opts, std::optional<double> b_constant) {
  Classification out;
  std::optional<double> s = b_constant;
  if (!s && space.control_spec().kind == ControlKind::constant) s = space.control_spec().constant;

  out.reports.push_back(verify(space, AxiomSystem::metric(), opts));
  if (s) out.reports.push_back(verify(space, AxiomSystem::b_metric(*s), opts));
  out.reports.push_back(verify(space, AxiomSystem::rectangular(), opts));
  if (s) out.reports.push_back(verify(space, AxiomSystem::rect_b_metric(*s), opts));
  out.reports.push_back(verify(space, AxiomSystem::controlled_metric(), opts));
  out.reports.push_back(verify(space, AxiomSystem::extended_rect_b(), opts));
  out.reports.push_back(verify(space, AxiomSystem::controlled_rect(), opts));

  auto implies = [&](SystemTag premise, SystemTag conclusion) {
    const auto* p = out.find(premise);
    const auto* c = out.find(conclusion);
    if (!p || !c) return;
    out.lattice.push_back({p->system.name(), c->system.name(), holds(p->verdict), holds(c->verdict)});
  };
  implies(SystemTag::metric, SystemTag::b_metric);
  implies(SystemTag::metric, SystemTag::rectangular);
  implies(SystemTag::metric, SystemTag::controlled_metric);
  implies(SystemTag::rectangular, SystemTag::rect_b_metric);
  implies(SystemTag::rectangular, SystemTag::controlled_rect);
  implies(SystemTag::rectangular, SystemTag::extended_rect_b);
  // With alpha == s the controlled rectangular inequality is the rectangular
  // b-metric inequality.
  const auto& ctl = space.control_spec();
  if (s && ctl.kind == ControlKind::constant && ctl.constant == *s) {
    implies(SystemTag::rect_b_metric, SystemTag::controlled_rect);
  }
  return out;
}

}  // namespace crm
