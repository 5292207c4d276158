#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "crm/io.hpp"
#include "support.hpp"

using namespace crm;
using nlohmann::json;

namespace {

std::string error_of(const json& doc) {
  try {
    parse_space(doc, "doc.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ParseSpace, MinimalDocument) {
  const auto space = parse_space(json::parse(R"({
    "carrier": {"finite": ["a", "b"]},
    "distance": {"entries": [["a", "b", 2]]}
  })"));
  EXPECT_EQ(space.size(), 2u);
  EXPECT_EQ(space.control_spec().kind, ControlKind::constant);
  EXPECT_DOUBLE_EQ(space.distance(*space.lookup("b"), *space.lookup("a")), 2.0);
}

TEST(ParseSpace, ErrorsNameTheLocation) {
  EXPECT_NE(error_of(json::parse(R"({"distance": {}})")).find("doc.json"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"carrier": {"finite": ["a","b"]}, "distance": {"entries": [["a", "b"]]}})"))
                .find("$.distance.entries[0]"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"carrier": {"finite": ["a","b"]}, "distance": {"entries": [["a","b",1]]},
                                     "alpha": {"kind": "wobbly"}})"))
                .find("$.alpha"),
            std::string::npos);
}

TEST(ParseSpace, SemanticErrorsBecomeInputErrors) {
  EXPECT_THROW(parse_space(json::parse(R"({"carrier": {"finite": ["a","b"]}, "distance": {"entries": [["a","b",-1]]}})")),
               InputError);
  EXPECT_THROW(parse_space(json::parse(R"({"carrier": {"finite": ["a","b","c"]}, "distance": {"entries": [["a","b",1]]}})")),
               InputError);
}

TEST(LoadSpace, MalformedFileReportsPosition) {
  const auto path = std::filesystem::temp_directory_path() / "crm_io_test_bad.json";
  {
    std::ofstream out(path);
    out << "{\n  \"carrier\": {\"finite\": [1, 2,]}\n}\n";
  }
  try {
    load_space(path);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("crm_io_test_bad.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  }
  std::filesystem::remove(path);
}

TEST(LoadSpace, MissingFile) { EXPECT_THROW(load_space("/nonexistent/space.json"), InputError); }

TEST(ParseMap, TableAndRegistered) {
  const auto t = parse_map(json::parse(R"({"kind": "table", "entries": [["a", "b"], ["b", "a"]]})"));
  EXPECT_EQ(t.kind, MapSpec::Kind::table);
  EXPECT_EQ(t.entries.size(), 2u);
  const auto s = load_map(crm::testing::fixture("final_example_map.json"));
  EXPECT_EQ(s.kind, MapSpec::Kind::sqrt_clamped);
  EXPECT_DOUBLE_EQ(s.lo, 1.0);
  EXPECT_DOUBLE_EQ(s.hi, 2.0);
  EXPECT_THROW(parse_map(json::parse(R"({"kind": "registered", "name": "cosine"})")), InputError);
  EXPECT_THROW(parse_map(json::parse(R"({"kind": "table", "entries": [["a"]]})")), InputError);
}

TEST(Fixtures, AllBundledFilesLoad) {
  for (const char* f : {"example_1_3.json", "example_1_3_modified.json", "example_2_3.json", "final_example.json",
                        "three_cycle.json"}) {
    EXPECT_NO_THROW(load_space(crm::testing::fixture(f))) << f;
  }
  for (const char* f : {"final_example_map.json", "three_cycle_map.json", "identity_map.json"}) {
    EXPECT_NO_THROW(load_map(crm::testing::fixture(f))) << f;
  }
}
