#include "crm/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace crm {

using nlohmann::json;

json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

namespace {

json point_json(const Point& p) { return p.label; }

json pair_json(const std::optional<std::pair<Point, Point>>& p) {
  if (!p) return nullptr;
  return json::array({point_json(p->first), point_json(p->second)});
}

json optional_real(const std::optional<double>& v) { return v ? real_json(*v) : json(nullptr); }

}  // namespace

json to_json(const Witness& w) {
  json mids = json::array();
  for (const auto& p : w.intermediates) mids.push_back(point_json(p));
  return {{"axiom", w.axiom},
          {"x", point_json(w.x)},
          {"y", point_json(w.y)},
          {"intermediates", mids},
          {"lhs", real_json(w.lhs)},
          {"rhs", real_json(w.rhs)},
          {"margin", real_json(w.margin)}};
}

json to_json(const AxiomReport& r) {
  json out{{"system", r.system.name()},
           {"verdict", to_string(r.verdict)},
           {"witness", r.witness ? to_json(*r.witness) : json(nullptr)},
           {"min_margin", real_json(r.min_margin)},
           {"checked_count", r.checked_count}};
  if (!r.pair_margins.empty()) {
    json pairs = json::array();
    for (const auto& pm : r.pair_margins) {
      pairs.push_back({{"x", point_json(pm.x)}, {"y", point_json(pm.y)}, {"worst_margin", real_json(pm.worst_margin)}});
    }
    out["pair_margins"] = std::move(pairs);
  }
  return out;
}

json to_json(const Classification& c) {
  json reports = json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  json lattice = json::array();
  for (const auto& l : c.lattice) {
    lattice.push_back({{"premise", l.premise}, {"conclusion", l.conclusion}, {"ok", l.ok()}});
  }
  return {{"reports", reports}, {"lattice", lattice}, {"lattice_ok", c.lattice_ok()}};
}

json to_json(const ContractionCertificate& c) {
  json constants;
  switch (c.constants.scheme) {
    case Scheme::banach:
    case Scheme::kannan:
      constants = {{"k", real_json(c.constants.k)}};
      break;
    case Scheme::reich:
      constants = {{"lambda", real_json(c.constants.k)}};
      break;
    case Scheme::fisher:
      constants = {{"lambda", real_json(c.constants.k)},
                   {"beta", real_json(c.constants.beta)},
                   {"variant", to_string(c.constants.variant)}};
      break;
  }
  return {{"scheme", to_string(c.constants.scheme)},
          {"constants", constants},
          {"worst_ratio", real_json(c.worst_ratio)},
          {"unbounded", c.unbounded},
          {"worst_pair", pair_json(c.worst_pair)},
          {"admissible", c.admissible},
          {"decay_rate", optional_real(c.decay_rate)},
          {"pairs_checked", c.pairs_checked},
          {"violations", c.violations}};
}

json to_json(const ConditionEstimate& c, bool verbose) {
  json aux = json::array();
  for (const auto& a : c.auxiliary_limits) {
    aux.push_back({{"name", a.name}, {"estimate", real_json(a.estimate)}, {"bound", real_json(a.bound)}, {"holds", a.holds}});
  }
  json out{{"scheme", to_string(c.scheme)},
           {"horizon", c.horizon},
           {"rate_constant", real_json(c.rate_constant)},
           {"estimate", real_json(c.estimate)},
           {"threshold", real_json(c.threshold)},
           {"holds", c.holds},
           {"is_estimate", true},
           {"alpha_limits_bounded", c.alpha_limits_bounded},
           {"auxiliary_limits", aux},
           {"fixed_point", c.fixed_point ? json(c.fixed_point->label) : json(nullptr)},
           {"cycle_detected", c.cycle_detected},
           {"samples", c.ratio_values.size()}};
  if (!c.note.empty()) out["note"] = c.note;
  if (verbose) out["estimate_leading_alpha_i"] = real_json(c.estimate_leading_i);
  return out;
}

json to_json(const DecayReport& r) {
  return {{"rate", real_json(r.rate)},
          {"holds", r.holds},
          {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)},
          {"max_excess", real_json(r.max_excess)}};
}

json to_json(const SkipReport& r) {
  return {{"holds", r.holds}, {"tail_max", real_json(r.tail_max)}, {"tail_begin", r.tail_begin}};
}

json to_json(const CauchyReport& r) {
  return {{"holds", r.holds},
          {"tail_max", real_json(r.tail_max)},
          {"tail_begin", r.tail_begin},
          {"worst", json::array({r.worst_n, r.worst_m})},
          {"tail_near_fixed_point", r.tail_near_fixed_point ? json(*r.tail_near_fixed_point) : json(nullptr)}};
}

json to_json(const AprioriReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n}, {"distance", real_json(row.distance_to_fixed)}, {"bound", real_json(row.bound)}});
  }
  return {{"applicable", r.applicable},
          {"holds", r.holds},
          {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)},
          {"rows", rows}};
}

json to_json(const UniquenessReport& r) {
  json starts = json::array();
  for (const auto& s : r.starts) {
    starts.push_back({{"start", s.start.label},
                      {"converged", s.converged},
                      {"fixed_point", s.fixed_point ? json(s.fixed_point->label) : json(nullptr)},
                      {"iterations", s.iterations},
                      {"stop_reason", to_string(s.stop_reason)}});
  }
  json fps = json::array();
  for (const auto& p : r.fixed_points) fps.push_back(p.label);
  return {{"starts", starts}, {"fixed_points", fps}, {"unique", r.unique}};
}

std::vector<json> trace_records(const OrbitTrace& t) {
  std::vector<json> out;
  for (std::size_t n = 0; n < t.points.size(); ++n) {
    const auto& p = t.points[n];
    json rec{{"n", n},
             {"x", p.value ? real_json(*p.value) : json(p.label)},
             {"step_dist", n < t.step_dists.size() ? real_json(t.step_dists[n]) : json(nullptr)},
             {"skip_dist", n < t.skip_dists.size() ? real_json(t.skip_dists[n]) : json(nullptr)},
             {"decay_ratio", n < t.decay_ratios.size() ? optional_real(t.decay_ratios[n]) : json(nullptr)}};
    out.push_back(std::move(rec));
  }
  return out;
}

json trace_summary(const OrbitTrace& t) {
  return {{"stop_reason", to_string(t.stop_reason)},
          {"iterations", t.iterations()},
          {"fixed_point", t.fixed_point ? json(t.fixed_point->label) : json(nullptr)},
          {"fixed_point_value", t.fixed_point && t.fixed_point->value ? real_json(*t.fixed_point->value) : json(nullptr)}};
}

}  // namespace crm
