#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crm/space.hpp"

namespace crm {

enum class SystemTag {
  metric,
  b_metric,
  rect_b_metric,
  rectangular,
  controlled_metric,
  extended_rect_b,
  controlled_rect,
};

/// A generalized-metric axiom system. The b-metric variants carry their own
/// constant s; the controlled and extended systems take their coefficients
/// from the space's control function.
struct AxiomSystem {
  SystemTag tag = SystemTag::metric;
  double s = 1.0;

  static AxiomSystem metric() { return {SystemTag::metric, 1.0}; }
  static AxiomSystem b_metric(double s) { return {SystemTag::b_metric, s}; }
  static AxiomSystem rect_b_metric(double s) { return {SystemTag::rect_b_metric, s}; }
  static AxiomSystem rectangular() { return {SystemTag::rectangular, 1.0}; }
  static AxiomSystem controlled_metric() { return {SystemTag::controlled_metric, 1.0}; }
  static AxiomSystem extended_rect_b() { return {SystemTag::extended_rect_b, 1.0}; }
  static AxiomSystem controlled_rect() { return {SystemTag::controlled_rect, 1.0}; }

  /// Number of intermediate points in the inequality (1 for triangle-type,
  /// 2 for rectangle-type).
  std::size_t intermediates() const;
  std::string name() const;
};

/// Parses the CLI spelling ("controlled-rect", "b-metric", ...).
std::optional<SystemTag> parse_system(const std::string& text);

enum class Verdict { satisfied, satisfied_on_grid, violated, vacuous };

std::string to_string(Verdict v);

inline bool holds(Verdict v) { return v != Verdict::violated; }

/// A concrete instance at which an axiom fails. For the inequality axioms
/// lhs > rhs + tol; `axiom` is "d1", "d2" or "d3".
struct Witness {
  std::string axiom;
  Point x;
  Point y;
  std::vector<Point> intermediates;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct PairMargin {
  Point x;
  Point y;
  double worst_margin = 0.0;
};

struct AxiomReport {
  AxiomSystem system;
  Verdict verdict = Verdict::vacuous;
  std::optional<Witness> witness;
  /// min(rhs - lhs) over all checked instances; +inf when none were checked.
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t checked_count = 0;
  /// Worst margin per ordered pair; filled for the controlled metric only.
  std::vector<PairMargin> pair_margins;
};

struct VerifyOptions {
  double tol = 1e-9;
  unsigned jobs = 1;
};

/// Both sides of one inequality instance.
struct InstanceValue {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
  bool violated(double tol) const { return lhs - rhs > tol; }
};

/// Evaluates d(x,y) against the system's right-hand side through the given
/// intermediates (one point for triangle-type systems, two for rectangle-type).
InstanceValue evaluate_instance(const SpaceDef& space, const AxiomSystem& system, const Point& x,
                                const Point& y, std::span<const Point> intermediates);

/// Exhaustive check of d1, d2 and the system's inequality over the
/// materialized carrier. The witness is the lexicographically smallest
/// violating instance in materialization order.
AxiomReport verify(const SpaceDef& space, const AxiomSystem& system, const VerifyOptions& opts = {});

inline AxiomReport verify_metric(const SpaceDef& s, const VerifyOptions& o = {}) {
  return verify(s, AxiomSystem::metric(), o);
}
inline AxiomReport verify_rectangular(const SpaceDef& s, const VerifyOptions& o = {}) {
  return verify(s, AxiomSystem::rectangular(), o);
}
inline AxiomReport verify_controlled_metric(const SpaceDef& s, const VerifyOptions& o = {}) {
  return verify(s, AxiomSystem::controlled_metric(), o);
}
inline AxiomReport verify_extended_rect_b(const SpaceDef& s, const VerifyOptions& o = {}) {
  return verify(s, AxiomSystem::extended_rect_b(), o);
}
inline AxiomReport verify_controlled_rect(const SpaceDef& s, const VerifyOptions& o = {}) {
  return verify(s, AxiomSystem::controlled_rect(), o);
}

/// One implication between verdicts, e.g. "metric => rectangular".
struct LatticeCheck {
  std::string premise;
  std::string conclusion;
  bool premise_holds = false;
  bool conclusion_holds = false;
  bool ok() const { return !premise_holds || conclusion_holds; }
};

struct Classification {
  std::vector<AxiomReport> reports;
  std::vector<LatticeCheck> lattice;

  bool lattice_ok() const;
  const AxiomReport* find(SystemTag tag) const;
};

/// Runs every verifier. The b-metric systems are included when the control
/// is constant (s taken from it) or when `b_constant` is given.
Classification classify(const SpaceDef& space, const VerifyOptions& opts = {},
                        std::optional<double> b_constant = std::nullopt);

}  // namespace crm
