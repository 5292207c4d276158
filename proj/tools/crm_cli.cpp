// crm: command-line front end for controlled rectangular metric spaces.
//
// Exit codes: 0 success / satisfied, 1 negative verdict, 2 input error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crm/axioms.hpp"
#include "crm/contraction.hpp"
#include "crm/golden.hpp"
#include "crm/io.hpp"
#include "crm/orbit.hpp"
#include "crm/report.hpp"

#ifndef CRM_DEFAULT_FIXTURES_DIR
#define CRM_DEFAULT_FIXTURES_DIR "fixtures"
#endif

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

struct Common {
  double tol = 1e-9;
  std::size_t grid = 0;
  unsigned jobs = 1;
  bool pretty = false;
  bool verbose = false;
};

struct Constants {
  std::string scheme;
  std::optional<double> k;
  std::optional<double> lambda;
  std::optional<double> beta;
  std::string variant = "product";
};

std::string fmt(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  return crm::format_real(v);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

crm::SpaceDef load_space(const std::string& path, const Common& c) {
  auto space = crm::load_space(path);
  if (c.grid > 0) {
    if (c.grid < 2) throw crm::InputError("--grid must be >= 2");
    space = space.with_grid(c.grid);
  }
  return space;
}

crm::Point resolve_start(const crm::SpaceDef& space, const std::string& text) {
  if (auto p = space.lookup(text)) return *p;
  throw crm::InputError("start '" + text + "' is not a carrier point");
}

std::optional<crm::SchemeConstants> scheme_constants(const Constants& c) {
  if (c.scheme.empty()) return std::nullopt;
  auto scheme = crm::parse_scheme(c.scheme);
  if (!scheme) throw crm::InputError("unknown scheme '" + c.scheme + "'");
  auto variant = crm::parse_variant(c.variant);
  if (!variant) throw crm::InputError("unknown variant '" + c.variant + "'");
  crm::SchemeConstants out{*scheme, 0.0, 0.0, *variant};
  switch (*scheme) {
    case crm::Scheme::banach:
    case crm::Scheme::kannan:
      if (!c.k) return std::nullopt;
      out.k = *c.k;
      break;
    case crm::Scheme::reich:
      if (!c.lambda && !c.k) return std::nullopt;
      out.k = c.lambda ? *c.lambda : *c.k;
      break;
    case crm::Scheme::fisher:
      if (!c.lambda || !c.beta) return std::nullopt;
      out.k = *c.lambda;
      out.beta = *c.beta;
      break;
  }
  return out;
}

crm::ContractionCertificate certify(const crm::SpaceDef& space, const crm::MapSpec& map, crm::Scheme scheme,
                                    const Constants& c, double tol) {
  switch (scheme) {
    case crm::Scheme::banach: return crm::fit_banach(space, map, tol);
    case crm::Scheme::kannan: return crm::fit_kannan(space, map, tol);
    case crm::Scheme::reich: return crm::fit_reich(space, map, tol);
    case crm::Scheme::fisher: {
      const auto variant = crm::parse_variant(c.variant).value_or(crm::FisherVariant::product);
      if (c.lambda && c.beta) return crm::check_fisher(space, map, *c.lambda, *c.beta, variant, tol);
      if (auto best = crm::search_fisher(space, map, variant, tol)) return *best;
      crm::ContractionCertificate none;
      none.constants = {crm::Scheme::fisher, 0.0, 0.0, variant};
      return none;
    }
  }
  return {};
}

void print_report_row(const crm::AxiomReport& r) {
  std::printf("%-22s %-18s checked=%-8zu min_margin=%s", r.system.name().c_str(), crm::to_string(r.verdict).c_str(),
              r.checked_count, fmt(r.min_margin).c_str());
  if (r.witness) {
    std::printf("  witness %s(%s,%s", r.witness->axiom.c_str(), r.witness->x.label.c_str(), r.witness->y.label.c_str());
    const char* sep = " via ";
    for (const auto& m : r.witness->intermediates) {
      std::printf("%s%s", sep, m.label.c_str());
      sep = ",";
    }
    std::printf(") lhs=%s rhs=%s", fmt(r.witness->lhs).c_str(), fmt(r.witness->rhs).c_str());
  }
  std::printf("\n");
}

int run_verify(const std::string& file, const std::string& system, double s, const Common& c) {
  const auto space = load_space(file, c);
  auto tag = crm::parse_system(system);
  if (!tag) throw crm::InputError("unknown system '" + system + "'");
  const auto report = crm::verify(space, crm::AxiomSystem{*tag, s}, {c.tol, c.jobs});
  if (c.pretty) {
    print_report_row(report);
  } else {
    emit(crm::to_json(report));
  }
  return report.verdict == crm::Verdict::violated ? kExitNegative : kExitOk;
}

int run_classify(const std::string& file, std::optional<double> s, const Common& c) {
  const auto space = load_space(file, c);
  const auto cls = crm::classify(space, {c.tol, c.jobs}, s);
  if (c.pretty) {
    for (const auto& r : cls.reports) print_report_row(r);
    for (const auto& l : cls.lattice) {
      std::printf("lattice %-16s => %-18s %s\n", l.premise.c_str(), l.conclusion.c_str(), l.ok() ? "ok" : "BROKEN");
    }
  } else {
    emit(crm::to_json(cls));
  }
  return cls.lattice_ok() ? kExitOk : kExitNegative;
}

int run_analyze(const std::string& space_file, const std::string& map_file, const Constants& k, const Common& c) {
  const auto space = load_space(space_file, c);
  const auto map = crm::load_map(map_file);
  std::vector<crm::Scheme> schemes{crm::Scheme::banach, crm::Scheme::kannan, crm::Scheme::reich, crm::Scheme::fisher};
  if (!k.scheme.empty()) {
    auto s = crm::parse_scheme(k.scheme);
    if (!s) throw crm::InputError("unknown scheme '" + k.scheme + "'");
    schemes = {*s};
  }
  json certs = json::array();
  bool any = false;
  for (auto s : schemes) {
    const auto cert = certify(space, map, s, k, c.tol);
    any = any || cert.admissible;
    if (c.pretty) {
      std::printf("%-8s worst_ratio=%-18s admissible=%-5s decay_rate=%s", crm::to_string(s).c_str(),
                  fmt(cert.worst_ratio).c_str(), cert.admissible ? "yes" : "no",
                  cert.decay_rate ? fmt(*cert.decay_rate).c_str() : "-");
      if (cert.worst_pair) {
        std::printf("  worst_pair=(%s,%s)", cert.worst_pair->first.label.c_str(), cert.worst_pair->second.label.c_str());
      }
      std::printf("\n");
    }
    certs.push_back(crm::to_json(cert));
  }
  // A user-supplied banach/kannan/reich constant is also checked instance by instance.
  json checks = json::array();
  if (auto sc = scheme_constants(k); sc && sc->scheme != crm::Scheme::fisher) {
    const auto b = crm::check_bound(space, map, *sc, c.tol);
    checks.push_back({{"scheme", crm::to_string(sc->scheme)},
                      {"constant", crm::real_json(sc->k)},
                      {"checked", b.checked},
                      {"violations", b.violations},
                      {"max_excess", crm::real_json(b.max_excess)}});
    any = b.violations == 0;
  }
  if (!c.pretty) emit({{"certificates", certs}, {"constant_checks", checks}});
  return any ? kExitOk : kExitNegative;
}

int run_iterate(const std::string& space_file, const std::string& map_file, const std::string& start, double eps,
                std::size_t max_iter, const Constants& k, const Common& c) {
  const auto space = load_space(space_file, c);
  const auto map = crm::load_map(map_file);
  crm::PicardOptions po;
  po.eps = eps;
  po.max_iter = max_iter;
  const auto trace = crm::picard(space, map, resolve_start(space, start), po);

  for (const auto& rec : crm::trace_records(trace)) {
    if (c.pretty) {
      std::printf("%4s  x=%-20s step=%-22s skip=%-22s ratio=%s\n", rec["n"].dump().c_str(), rec["x"].dump().c_str(),
                  rec["step_dist"].dump().c_str(), rec["skip_dist"].dump().c_str(), rec["decay_ratio"].dump().c_str());
    } else {
      std::cout << rec.dump() << "\n";
    }
  }

  json summary = crm::trace_summary(trace);
  if (!k.scheme.empty()) {
    double rate = -1.0;
    if (auto sc = scheme_constants(k)) {
      rate = crm::decay_rate_for(*sc);
    } else if (auto s = crm::parse_scheme(k.scheme)) {
      const auto cert = certify(space, map, *s, k, c.tol);
      if (cert.decay_rate) rate = *cert.decay_rate;
    } else {
      throw crm::InputError("unknown scheme '" + k.scheme + "'");
    }
    if (rate >= 0.0 && rate < 1.0 && !trace.step_dists.empty()) {
      summary["decay_check"] = crm::to_json(crm::decay_check(trace, rate, c.tol));
    } else {
      summary["decay_check"] = nullptr;
    }
  }
  if (trace.points.size() >= 4) summary["skip_check"] = crm::to_json(crm::skip_check(trace, std::max(eps, c.tol)));
  if (trace.points.size() >= 8) summary["cauchy_probe"] = crm::to_json(crm::cauchy_probe(space, trace, std::max(eps, c.tol)));
  if (c.pretty) {
    std::printf("stop_reason=%s iterations=%zu fixed_point=%s\n", crm::to_string(trace.stop_reason).c_str(),
                trace.iterations(), trace.fixed_point ? trace.fixed_point->label.c_str() : "-");
  } else {
    std::cout << json{{"summary", summary}}.dump() << "\n";
  }
  return trace.fixed_point ? kExitOk : kExitNegative;
}

int run_conditions(const std::string& space_file, const std::string& map_file, const std::string& start,
                   std::size_t horizon, const std::string& dump, const Constants& k, const Common& c) {
  const auto space = load_space(space_file, c);
  const auto map = crm::load_map(map_file);
  if (k.scheme.empty()) throw crm::InputError("conditions requires --scheme");
  auto sc = scheme_constants(k);
  if (!sc) {
    auto s = crm::parse_scheme(k.scheme);
    if (!s) throw crm::InputError("unknown scheme '" + k.scheme + "'");
    if (*s == crm::Scheme::fisher) throw crm::InputError("fisher conditions require --lambda and --beta");
    const auto cert = certify(space, map, *s, k, c.tol);
    sc = cert.constants;
  }
  crm::ConditionOptions co;
  co.horizon = horizon;
  co.tol = c.tol;
  const auto est = crm::condition_estimate(space, map, resolve_start(space, start), *sc, co);
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw crm::InputError(dump + ": cannot write");
    out << "i,m,value\n";
    for (const auto& r : est.ratio_values) out << r.i << "," << r.m << "," << fmt(r.value) << "\n";
  }
  if (c.pretty) {
    std::printf("scheme=%s horizon=%zu estimate=%s threshold=%s holds=%s\n", crm::to_string(est.scheme).c_str(),
                est.horizon, fmt(est.estimate).c_str(), fmt(est.threshold).c_str(), est.holds ? "yes" : "no");
    for (const auto& a : est.auxiliary_limits) {
      std::printf("  %-20s estimate=%-18s bound=%-10s %s\n", a.name.c_str(), fmt(a.estimate).c_str(),
                  fmt(a.bound).c_str(), a.holds ? "ok" : "fails");
    }
    if (c.verbose) std::printf("  estimate with alpha(x_i,x_m) leading: %s\n", fmt(est.estimate_leading_i).c_str());
  } else {
    emit(crm::to_json(est, c.verbose));
  }
  return est.holds ? kExitOk : kExitNegative;
}

int run_reproduce(const Common& c) {
  const char* env = std::getenv("CRM_FIXTURES_DIR");
  const std::string dir = env && *env ? env : CRM_DEFAULT_FIXTURES_DIR;
  const auto rows = crm::reproduce_examples(dir);
  bool all = true;
  json out = json::array();
  for (const auto& r : rows) {
    all = all && r.pass;
    out.push_back({{"claim", r.claim},
                   {"printed", r.printed},
                   {"computed", r.computed ? crm::real_json(*r.computed) : json(nullptr)},
                   {"expected", r.expected ? crm::real_json(*r.expected) : json(nullptr)},
                   {"verdict", r.verdict},
                   {"pass", r.pass}});
    if (c.pretty) {
      std::printf("%-4s %-70s printed=%-12s computed=%-18s %s\n", r.pass ? "ok" : "FAIL", r.claim.c_str(), r.printed.c_str(),
                  r.computed ? fmt(*r.computed).c_str() : "-", r.verdict.c_str());
    }
  }
  if (!c.pretty) emit({{"rows", out}, {"all_pass", all}});
  return all ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled rectangular metric spaces: axiom verification, contraction certificates, Picard orbits"};
  app.require_subcommand(1, 1);

  Common common;
  Constants constants;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", common.tol, "Inequality tolerance")->capture_default_str();
    cmd->add_option("--grid", common.grid, "Override grid_n of every interval");
    cmd->add_option("--jobs", common.jobs, "Worker threads for exhaustive scans")->capture_default_str();
    cmd->add_flag("--pretty", common.pretty, "Human-readable table instead of JSON");
    cmd->add_flag("--verbose", common.verbose, "Extra diagnostics");
  };
  auto add_constants = [&](CLI::App* cmd) {
    cmd->add_option("--scheme", constants.scheme, "banach|kannan|reich|fisher")
        ->check(CLI::IsMember({"banach", "kannan", "reich", "fisher"}));
    cmd->add_option("--k", constants.k, "Contraction constant k");
    cmd->add_option("--lambda", constants.lambda, "Constant lambda (reich, fisher)");
    cmd->add_option("--beta", constants.beta, "Constant beta (fisher)");
    cmd->add_option("--variant", constants.variant, "Fisher numerator: product|sum")
        ->check(CLI::IsMember({"product", "sum"}))
        ->capture_default_str();
  };

  std::string space_file;
  std::string map_file;
  std::string system = "controlled-rect";
  double b_constant = 1.0;
  std::optional<double> classify_s;
  std::string start;
  double eps = 1e-9;
  std::size_t max_iter = 1000;
  std::size_t horizon = 64;
  std::string dump;

  auto* verify = app.add_subcommand("verify", "Check one axiom system");
  verify->add_option("space", space_file, "Space definition JSON")->required();
  verify->add_option("--system", system, "metric|b-metric|rect-b-metric|rectangular|controlled-metric|extended-rect-b|controlled-rect")
      ->capture_default_str();
  verify->add_option("--s", b_constant, "Constant of the b-metric systems")->capture_default_str();
  add_common(verify);

  auto* classify = app.add_subcommand("classify", "Run every axiom verifier and the implication checks");
  classify->add_option("space", space_file, "Space definition JSON")->required();
  classify->add_option("--s", classify_s, "Constant of the b-metric systems");
  add_common(classify);

  auto* analyze = app.add_subcommand("analyze", "Contraction certificates for a mapping");
  analyze->add_option("space", space_file, "Space definition JSON")->required();
  analyze->add_option("map", map_file, "Mapping JSON")->required();
  add_constants(analyze);
  add_common(analyze);

  auto* iterate = app.add_subcommand("iterate", "Picard orbit with decay, skip and Cauchy diagnostics");
  iterate->add_option("space", space_file, "Space definition JSON")->required();
  iterate->add_option("map", map_file, "Mapping JSON")->required();
  iterate->add_option("--start", start, "Starting carrier point")->required();
  iterate->add_option("--eps", eps, "Stop when d(x_n, x_{n+1}) <= eps")->capture_default_str();
  iterate->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
  add_constants(iterate);
  add_common(iterate);

  auto* conditions = app.add_subcommand("conditions", "Finite-horizon estimate of the alpha-ratio conditions");
  conditions->add_option("space", space_file, "Space definition JSON")->required();
  conditions->add_option("map", map_file, "Mapping JSON")->required();
  conditions->add_option("--start", start, "Starting carrier point")->required();
  conditions->add_option("--horizon", horizon, "Orbit horizon (>= 8)")->capture_default_str();
  conditions->add_option("--dump-ratios", dump, "Write the ratio matrix as CSV (i,m,value)");
  add_constants(conditions);
  add_common(conditions);

  auto* reproduce = app.add_subcommand("reproduce-paper", "Replay the bundled worked examples");
  add_common(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "crm: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*verify) return run_verify(space_file, system, b_constant, common);
    if (*classify) return run_classify(space_file, classify_s, common);
    if (*analyze) return run_analyze(space_file, map_file, constants, common);
    if (*iterate) return run_iterate(space_file, map_file, start, eps, max_iter, constants, common);
    if (*conditions) return run_conditions(space_file, map_file, start, horizon, dump, constants, common);
    if (*reproduce) return run_reproduce(common);
  } catch (const crm::InputError& e) {
    std::cerr << "crm: " << e.what() << "\n";
    return kExitInput;
  } catch (const crm::SpaceError& e) {
    std::cerr << "crm: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "crm: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
