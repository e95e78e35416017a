#include <gtest/gtest.h>

#include "run_config.hpp"

namespace nhgeo::cli {
namespace {

TEST(RunConfig, MinimalFillsDefaults) {
  const auto c = parse_config(R"({"system": "nonholonomic-particle"})");
  EXPECT_EQ(c.dt, 1e-3);
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.T, 10.0);
  EXPECT_EQ(c.potential, "none");
  EXPECT_EQ(c.kind, "nonholonomic");
  EXPECT_EQ(c.t_small, 0.3);
}

TEST(RunConfig, NegativeDtIsValidationError) {
  EXPECT_THROW(parse_config(R"({"system": "vertical-disk", "dt": -0.1})"), ValidationError);
}

TEST(RunConfig, CollectsEveryViolation) {
  try {
    parse_config(R"({"system": "veselova", "dt": 0, "T": -1, "v0": [1, 2], "q0": [0, 1, 2]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().size(), 3u) << e.what();
  }
}

TEST(RunConfig, UnknownKeyRejected) {
  try {
    parse_config(R"({"system": "vertical-disk", "steps": 3})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'steps'"), std::string::npos);
  }
  EXPECT_THROW(parse_config(R"({"system": "vertical-disk", "suite": {"psi": 3}})"), ParseError);
}

TEST(RunConfig, MalformedJsonReportsLine) {
  try {
    parse_config("{\n  \"system\": \"veselova\",\n  \"dt\": ,\n}", "run.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("run.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(RunConfig, WrongTypeNamesKey) {
  try {
    parse_config(R"({"system": "veselova", "seed": "seven"})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'seed'"), std::string::npos);
  }
}

TEST(RunConfig, RoundTripIsIdempotent) {
  const auto c = parse_config(R"({
    "command": "verify", "system": "vertical-disk", "parameters": {"R": 2.0, "m": 0.5},
    "q0": [0, 0, 0, 0], "v0": [1, 1, 2, 0], "seed": 7, "tolerances": {"distance": 1e-5},
    "grid": {"lo": [0, 0], "hi": [1, 1], "counts": [2, 3]},
    "suite": {"sample_points": 10, "equivalence_horizon": 2.5},
    "points": [[0, 0.1, 0.2, 0.3]]
  })");
  const std::string once = to_json(c);
  const auto again = parse_config(once);
  EXPECT_EQ(again, c);
  EXPECT_EQ(to_json(again), once);
}

TEST(RunConfig, SuiteJsonCarriesOverrides) {
  auto c = parse_config(R"({"system": "vertical-disk", "tolerances": {"distance": 1e-5}})");
  c.suite.psi_states = 4;
  const std::string s = suite_json(c);
  EXPECT_NE(s.find("\"psi_states\":4"), std::string::npos) << s;
  EXPECT_NE(s.find("\"distance\":1e-05"), std::string::npos) << s;
}

TEST(RunConfig, SystemDims) {
  EXPECT_EQ(system_dims("vertical-disk")->first, 4u);
  EXPECT_EQ(system_dims("veselova")->second, 2u);
  EXPECT_FALSE(system_dims("top").has_value());
}

}  // namespace
}  // namespace nhgeo::cli
