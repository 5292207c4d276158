#include "crm/io.hpp"

#include <fstream>
#include <sstream>

namespace crm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
  throw InputError(origin + ": " + where + ": " + what);
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // e.what() carries "at line L, column C".
    throw InputError(path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

double real_at(const json& v, const std::string& origin, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto r = parse_real(v.get<std::string>())) return *r;
  }
  fail(origin, where, "expected a number or fraction string");
}

const json& member(const json& obj, const char* key, const std::string& origin, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(origin, where, std::string("missing key '") + key + "'");
  return obj.at(key);
}

Point point_at(const json& v, const std::string& origin, const std::string& where) {
  if (!v.is_number() && !v.is_string()) fail(origin, where, "expected a point (number or string)");
  return point_from_json(v);
}

Carrier parse_carrier(const json& c, const std::string& origin) {
  Carrier out;
  if (!c.is_object()) fail(origin, "$.carrier", "expected an object");
  if (c.contains("finite")) {
    const auto& f = c.at("finite");
    if (!f.is_array()) fail(origin, "$.carrier.finite", "expected an array");
    for (std::size_t i = 0; i < f.size(); ++i) {
      out.finite_points.push_back(point_at(f[i], origin, "$.carrier.finite[" + std::to_string(i) + "]"));
    }
  }
  if (c.contains("intervals")) {
    const auto& iv = c.at("intervals");
    if (!iv.is_array()) fail(origin, "$.carrier.intervals", "expected an array");
    for (std::size_t i = 0; i < iv.size(); ++i) {
      const std::string at = "$.carrier.intervals[" + std::to_string(i) + "]";
      Interval interval;
      interval.lo = real_at(member(iv[i], "lo", origin, at), origin, at + ".lo");
      interval.hi = real_at(member(iv[i], "hi", origin, at), origin, at + ".hi");
      const auto& n = member(iv[i], "grid_n", origin, at);
      if (!n.is_number_integer() || n.get<long long>() < 2) fail(origin, at + ".grid_n", "expected an integer >= 2");
      interval.grid_n = n.get<std::size_t>();
      if (!(interval.lo < interval.hi)) fail(origin, at, "requires lo < hi");
      out.intervals.push_back(interval);
    }
  }
  if (out.finite_points.empty() && out.intervals.empty()) fail(origin, "$.carrier", "carrier is empty");
  return out;
}

DistanceSpec parse_distance(const json& d, const std::string& origin) {
  DistanceSpec out;
  if (!d.is_object()) fail(origin, "$.distance", "expected an object");
  if (d.contains("entries")) {
    const auto& e = d.at("entries");
    if (!e.is_array()) fail(origin, "$.distance.entries", "expected an array");
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string at = "$.distance.entries[" + std::to_string(i) + "]";
      if (!e[i].is_array() || e[i].size() != 3) fail(origin, at, "expected [x, y, d]");
      out.entries.push_back(
          {point_at(e[i][0], origin, at + "[0]"), point_at(e[i][1], origin, at + "[1]"), real_at(e[i][2], origin, at + "[2]")});
    }
  }
  if (d.contains("fallback") && !d.at("fallback").is_null()) {
    const auto& f = d.at("fallback");
    const std::string name = f.is_string() ? f.get<std::string>() : "";
    if (name == "squared_difference") {
      out.fallback = DistanceFallback::squared_difference;
    } else if (name == "abs_difference") {
      out.fallback = DistanceFallback::abs_difference;
    } else if (name != "none") {
      fail(origin, "$.distance.fallback", "expected \"squared_difference\", \"abs_difference\" or null");
    }
  }
  if (d.contains("symmetric_closure")) {
    if (!d.at("symmetric_closure").is_boolean()) fail(origin, "$.distance.symmetric_closure", "expected a boolean");
    out.symmetric_closure = d.at("symmetric_closure").get<bool>();
  }
  return out;
}

ControlSpec parse_control(const json& a, const std::string& origin) {
  if (!a.is_object()) fail(origin, "$.alpha", "expected an object");
  const auto& kind_v = member(a, "kind", origin, "$.alpha");
  if (!kind_v.is_string()) fail(origin, "$.alpha.kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  auto num = [&](const char* key) { return real_at(member(a, key, origin, "$.alpha"), origin, std::string("$.alpha.") + key); };

  if (kind == "const") return ControlSpec::constant_value(num("s"));
  if (kind == "max") return ControlSpec::max();
  if (kind == "max_plus") return ControlSpec::max_plus(num("c"));
  if (kind == "sum_plus") return ControlSpec::sum_plus(num("c"));
  if (kind == "piecewise_max_plus") {
    const auto& region = member(a, "region", origin, "$.alpha");
    if (!region.is_array() || region.size() != 2) fail(origin, "$.alpha.region", "expected [lo, hi]");
    return ControlSpec::piecewise_max_plus(num("c"), real_at(region[0], origin, "$.alpha.region[0]"),
                                           real_at(region[1], origin, "$.alpha.region[1]"), num("else"));
  }
  if (kind == "table") {
    const auto& e = member(a, "entries", origin, "$.alpha");
    if (!e.is_array()) fail(origin, "$.alpha.entries", "expected an array");
    std::vector<ControlEntry> entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string at = "$.alpha.entries[" + std::to_string(i) + "]";
      if (!e[i].is_array() || e[i].size() != 3) fail(origin, at, "expected [x, y, alpha]");
      entries.push_back(
          {point_at(e[i][0], origin, at + "[0]"), point_at(e[i][1], origin, at + "[1]"), real_at(e[i][2], origin, at + "[2]")});
    }
    return ControlSpec::table(std::move(entries));
  }
  fail(origin, "$.alpha.kind", "unknown control kind '" + kind + "'");
}

}  // namespace

Point point_from_json(const json& v) {
  if (v.is_number()) return Point::numeric(v.get<double>());
  const std::string s = v.get<std::string>();
  if (auto r = parse_real(s)) return Point::numeric(*r, s);
  return Point::symbol(s);
}

SpaceDef parse_space(const json& doc, const std::string& origin) {
  if (!doc.is_object()) fail(origin, "$", "expected an object");
  Carrier carrier = parse_carrier(member(doc, "carrier", origin, "$"), origin);
  DistanceSpec distance = parse_distance(member(doc, "distance", origin, "$"), origin);
  ControlSpec control = doc.contains("alpha") ? parse_control(doc.at("alpha"), origin) : ControlSpec::constant_value(1.0);
  try {
    return SpaceDef::create(std::move(carrier), std::move(distance), std::move(control));
  } catch (const SpaceError& e) {
    throw InputError(origin + ": " + e.what());
  }
}

SpaceDef load_space(const std::filesystem::path& path) { return parse_space(read_json(path), path.string()); }

MapSpec parse_map(const json& doc, const std::string& origin) {
  if (!doc.is_object()) fail(origin, "$", "expected an object");
  const auto& kind_v = member(doc, "kind", origin, "$");
  const std::string kind = kind_v.is_string() ? kind_v.get<std::string>() : "";
  if (kind == "table") {
    const auto& e = member(doc, "entries", origin, "$");
    if (!e.is_array()) fail(origin, "$.entries", "expected an array");
    std::vector<std::pair<Point, Point>> entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string at = "$.entries[" + std::to_string(i) + "]";
      if (!e[i].is_array() || e[i].size() != 2) fail(origin, at, "expected [x, Tx]");
      entries.emplace_back(point_at(e[i][0], origin, at + "[0]"), point_at(e[i][1], origin, at + "[1]"));
    }
    return MapSpec::table(std::move(entries));
  }
  if (kind != "registered") fail(origin, "$.kind", "expected \"table\" or \"registered\"");

  const auto& name_v = member(doc, "name", origin, "$");
  const std::string name = name_v.is_string() ? name_v.get<std::string>() : "";
  const json params = doc.contains("params") ? doc.at("params") : json::object();
  auto param = [&](const char* key) -> const json& { return member(params, key, origin, "$.params"); };
  if (name == "identity") return MapSpec::identity();
  if (name == "const") return MapSpec::constant(point_at(param("c"), origin, "$.params.c"));
  if (name == "sqrt_clamped") {
    return MapSpec::sqrt_clamped(real_at(param("lo"), origin, "$.params.lo"), real_at(param("hi"), origin, "$.params.hi"),
                                 point_at(param("c"), origin, "$.params.c"));
  }
  fail(origin, "$.name", "unknown registered map '" + name + "'");
}

MapSpec load_map(const std::filesystem::path& path) { return parse_map(read_json(path), path.string()); }

}  // namespace crm
