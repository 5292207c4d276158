#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace crm {

/// One replayed claim from the bundled worked examples. `printed` is the value
/// as printed (rounded, shown only); `computed` is what the library
/// produces; `expected` is the independently derived value the check binds
/// to, when the claim is numeric.
struct GoldenRow {
  std::string claim;
  std::string printed;
  std::optional<double> computed;
  std::optional<double> expected;
  std::string verdict;
  bool pass = false;
};

/// Replays every worked example from the fixture files in `fixtures_dir`.
std::vector<GoldenRow> reproduce_examples(const std::filesystem::path& fixtures_dir);

}  // namespace crm
