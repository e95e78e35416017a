#include <gtest/gtest.h>

#include <json.hpp>

#include "nhgeo/io.hpp"
#include "nhgeo/verify.hpp"

namespace nhgeo::io {
namespace {

TEST(Csv, HeaderAndSeventeenDigits) {
  Trajectory t;
  t.times = {0.0, 0.1};
  t.points = {{1.0, 2.0}, {1.0 / 3.0, -0.5}};
  t.velocities = {{0.0, 0.0}, {1e-20, 2.0}};
  const std::string csv = trajectory_csv(t);
  EXPECT_EQ(csv,
            "t,q1,q2,v1,v2\n"
            "0,1,2,0,0\n"
            "0.10000000000000001,0.33333333333333331,-0.5,9.9999999999999995e-21,2\n");
}

TEST(Csv, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(ReportJson, NonFiniteResidualIsNull) {
  verify::VerificationReport r;
  r.system = "nonholonomic-particle";
  r.checks.push_back({"distance", "statement", std::nan(""), 1e-4, false, {{"t_used", 0.3}}, "ShootingDiverged: x"});
  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_EQ(j["system"], "nonholonomic-particle");
  EXPECT_FALSE(j["all_pass"].get<bool>());
  EXPECT_TRUE(j["checks"][0]["residual"].is_null());
  EXPECT_EQ(j["checks"][0]["note"], "ShootingDiverged: x");
  EXPECT_EQ(j["checks"][0]["details"]["t_used"], 0.3);
}

}  // namespace
}  // namespace nhgeo::io
