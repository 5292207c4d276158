#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "crm/contraction.hpp"
#include "crm/space.hpp"

namespace crm {

/// Malformed input; the message names the file and the JSON location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Space definition document:
///
///   {
///     "carrier":  {"finite": [0.5, "1/3", "a"], "intervals": [{"lo": 1, "hi": 2, "grid_n": 11}]},
///     "distance": {"entries": [["1/3", "1/4", 0.04]], "fallback": "squared_difference"},
///     "alpha":    {"kind": "piecewise_max_plus", "c": 2, "region": [1, 2], "else": 3}
///   }
///
/// Numbers may be written as fraction strings ("1/9"). Strings that do not
/// read as numbers are symbolic point labels.
SpaceDef parse_space(const nlohmann::json& doc, const std::string& origin = "<space>");
SpaceDef load_space(const std::filesystem::path& path);

/// Mapping document: {"kind": "table", "entries": [[x, Tx], ...]} or
/// {"kind": "registered", "name": "sqrt_clamped", "params": {"lo": 1, "hi": 2, "c": 1}}.
MapSpec parse_map(const nlohmann::json& doc, const std::string& origin = "<map>");
MapSpec load_map(const std::filesystem::path& path);

/// A JSON scalar read as a point.
Point point_from_json(const nlohmann::json& v);

}  // namespace crm
