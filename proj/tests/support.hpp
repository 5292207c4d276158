#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "crm/space.hpp"

#ifndef CRM_FIXTURES_DIR
#error "CRM_FIXTURES_DIR must be defined"
#endif

namespace crm::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(CRM_FIXTURES_DIR) / name;
}

/// Dense description of a finite space: points 0..n-1 labelled p0, p1, ...
struct Table {
  std::size_t n = 0;
  std::vector<std::vector<double>> d;
  std::vector<std::vector<double>> alpha;  // empty means const(s)
  double s = 1.0;
};

inline std::vector<Point> labels(std::size_t n) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Point::symbol("p" + std::to_string(i)));
  return out;
}

inline SpaceDef build(const Table& t) {
  const auto pts = labels(t.n);
  Carrier carrier{pts, {}};
  DistanceSpec dist;
  for (std::size_t i = 0; i < t.n; ++i) {
    for (std::size_t j = i + 1; j < t.n; ++j) dist.entries.push_back({pts[i], pts[j], t.d[i][j]});
  }
  if (t.alpha.empty()) return SpaceDef::create(carrier, dist, ControlSpec::constant_value(t.s));
  std::vector<ControlEntry> ce;
  for (std::size_t i = 0; i < t.n; ++i) {
    for (std::size_t j = 0; j < t.n; ++j) {
      if (i != j) ce.push_back({pts[i], pts[j], t.alpha[i][j]});
    }
  }
  return SpaceDef::create(carrier, dist, ControlSpec::table(std::move(ce)));
}

inline Table random_table(std::mt19937_64& rng, std::size_t n, double lo, double hi, double s) {
  std::uniform_real_distribution<double> u(lo, hi);
  Table t;
  t.n = n;
  t.s = s;
  t.d.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) t.d[i][j] = t.d[j][i] = u(rng);
  }
  return t;
}

/// Brute-force quadrilateral oracle over a dense table: returns true when
/// d(x,y) <= coef * sum for every ordered distinct quadruple.
inline bool oracle_rect(const Table& t, bool extended, double tol = 1e-9) {
  auto a = [&](std::size_t i, std::size_t j) {
    if (i == j) return 1.0;
    return t.alpha.empty() ? t.s : t.alpha[i][j];
  };
  for (std::size_t x = 0; x < t.n; ++x)
    for (std::size_t y = 0; y < t.n; ++y)
      for (std::size_t u = 0; u < t.n; ++u)
        for (std::size_t v = 0; v < t.n; ++v) {
          if (x == y || x == u || x == v || y == u || y == v || u == v) continue;
          double rhs = extended ? a(x, y) * (t.d[x][u] + t.d[u][v] + t.d[v][y])
                                : a(x, u) * t.d[x][u] + a(u, v) * t.d[u][v] + a(v, y) * t.d[v][y];
          if (t.d[x][y] - rhs > tol) return false;
        }
  return true;
}

inline bool oracle_triangle(const Table& t, double s, double tol = 1e-9) {
  for (std::size_t x = 0; x < t.n; ++x)
    for (std::size_t y = 0; y < t.n; ++y)
      for (std::size_t z = 0; z < t.n; ++z) {
        if (x == y || x == z || y == z) continue;
        if (t.d[x][y] - s * (t.d[x][z] + t.d[z][y]) > tol) return false;
      }
  return true;
}

}  // namespace crm::testing
