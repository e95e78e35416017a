#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "nhgeo/nhgeo.h"

namespace {

struct System {
  nhgeo_system* ptr = nullptr;
  ~System() { nhgeo_system_destroy(ptr); }
};

TEST(CApi, CreateAndQueryDimensions) {
  System s;
  ASSERT_EQ(nhgeo_system_create("vertical-disk", nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE, &s.ptr),
            NHGEO_OK);
  EXPECT_EQ(nhgeo_system_dim(s.ptr), 4u);
  EXPECT_EQ(nhgeo_system_base_dim(s.ptr), 2u);
  EXPECT_STREQ(nhgeo_last_error_message(), "");
}

TEST(CApi, BadParameterReportsStatusAndMessage) {
  const char* keys[] = {"R"};
  const double values[] = {-1.0};
  nhgeo_system* s = nullptr;
  EXPECT_EQ(nhgeo_system_create("vertical-disk", keys, values, 1, NHGEO_POTENTIAL_NONE, &s),
            NHGEO_INVALID_PARAMETERS);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(nhgeo_last_error_message()).find("R"), std::string::npos);
  EXPECT_STREQ(nhgeo_status_name(NHGEO_INVALID_PARAMETERS), "InvalidParameters");
}

TEST(CApi, NullArgumentsRejected) {
  nhgeo_system* s = nullptr;
  EXPECT_EQ(nhgeo_system_create(nullptr, nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE, &s),
            NHGEO_INVALID_ARGUMENT);
  EXPECT_EQ(nhgeo_principal_metric(nullptr, nullptr, 0, nullptr), NHGEO_INVALID_ARGUMENT);
}

TEST(CApi, PrincipalMetricParticle) {
  System s;
  ASSERT_EQ(nhgeo_system_create("nonholonomic-particle", nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE,
                                &s.ptr),
            NHGEO_OK);
  const double q[] = {0, 1, 0};
  double h[9];
  ASSERT_EQ(nhgeo_principal_metric(s.ptr, q, 3, h), NHGEO_OK);
  const double expected[] = {2, 0, -1, 0, 0.5, 0, -1, 0, 1};
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(h[i], expected[i], 1e-12);
  EXPECT_EQ(nhgeo_principal_metric(s.ptr, q, 2, h), NHGEO_INVALID_ARGUMENT);
}

TEST(CApi, RecoverPhiParticle) {
  System s;
  ASSERT_EQ(nhgeo_system_create("nonholonomic-particle", nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE,
                                &s.ptr),
            NHGEO_OK);
  const double qbar[] = {0.3, 1.0};
  double phi = 0, dphi[2], residual = 1;
  ASSERT_EQ(nhgeo_recover_phi(s.ptr, qbar, 2, &phi, dphi, &residual), NHGEO_OK);
  EXPECT_NEAR(phi, -0.5 * std::log(2.0), 1e-7);
  EXPECT_NEAR(dphi[1], -0.5, 1e-9);
  EXPECT_LE(residual, 1e-8);
}

TEST(CApi, SimulateAndCsv) {
  System s;
  ASSERT_EQ(nhgeo_system_create("nonholonomic-particle", nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE,
                                &s.ptr),
            NHGEO_OK);
  const double q0[] = {0, 0, 0}, v0[] = {1, 1, 0};
  nhgeo_trajectory* t = nullptr;
  ASSERT_EQ(nhgeo_simulate(s.ptr, NHGEO_NONHOLONOMIC, q0, v0, 3, 0.5, NHGEO_RK4_FIXED, 0.1, 0, &t),
            NHGEO_OK);
  EXPECT_EQ(nhgeo_trajectory_size(t), 6u);
  EXPECT_EQ(nhgeo_trajectory_dim(t), 3u);
  double time, q[3], v[3];
  ASSERT_EQ(nhgeo_trajectory_sample(t, 5, &time, q, v), NHGEO_OK);
  EXPECT_DOUBLE_EQ(time, 0.5);
  EXPECT_NEAR(q[1], 0.5, 1e-14);
  EXPECT_EQ(nhgeo_trajectory_sample(t, 6, &time, q, v), NHGEO_INVALID_ARGUMENT);
  char* csv = nullptr;
  ASSERT_EQ(nhgeo_trajectory_csv(t, &csv), NHGEO_OK);
  EXPECT_EQ(std::string(csv).rfind("t,q1,q2,q3,v1,v2,v3\n0,0,0,0,1,1,0\n", 0), 0u);
  nhgeo_string_free(csv);
  nhgeo_trajectory_destroy(t);

  const double bad[] = {1, 1, 1};
  EXPECT_EQ(nhgeo_simulate(s.ptr, NHGEO_NONHOLONOMIC, q0, bad, 3, 0.5, NHGEO_RK4_FIXED, 0.1, 0, &t),
            NHGEO_CONSTRAINT_VIOLATED);
  EXPECT_EQ(nhgeo_simulate(s.ptr, NHGEO_NONHOLONOMIC, q0, v0, 3, 0.5, NHGEO_RK4_FIXED, -0.1, 0, &t),
            NHGEO_INVALID_ARGUMENT);
}

TEST(CApi, VerifyRejectsUnknownConfigKey) {
  System s;
  ASSERT_EQ(nhgeo_system_create("vertical-disk", nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE, &s.ptr),
            NHGEO_OK);
  char* report = nullptr;
  int pass = -1;
  EXPECT_EQ(nhgeo_verify(s.ptr, 0, "{\"bogus\": 1}", &report, &pass), NHGEO_INVALID_ARGUMENT);
  EXPECT_EQ(nhgeo_verify(s.ptr, 0, "{not json", &report, &pass), NHGEO_INVALID_ARGUMENT);
  EXPECT_EQ(report, nullptr);
}

TEST(CApi, DistanceDisk) {
  System s;
  ASSERT_EQ(nhgeo_system_create("vertical-disk", nullptr, nullptr, 0, NHGEO_POTENTIAL_NONE, &s.ptr),
            NHGEO_OK);
  const double q0[] = {0, 0, 0, 0}, v0[] = {1, 1, 1, 0};
  double len = 0, dist = 0, t_used = 0;
  ASSERT_EQ(nhgeo_distance(s.ptr, q0, v0, 4, 0.3, 1e-3, &len, &dist, &t_used), NHGEO_OK);
  EXPECT_NEAR(len, dist, 1e-4);
  EXPECT_EQ(t_used, 0.3);
}

}  // namespace
