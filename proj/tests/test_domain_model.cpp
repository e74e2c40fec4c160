#include <gtest/gtest.h>

#include <cmath>

#include "noxsim/domain_model.hpp"

using namespace noxsim;

namespace {

PhysicalParams unit_params() {
  PhysicalParams p;
  p.diffusion = 1.0;
  p.length = 1.0;
  p.u_r = 1.0;
  p.u_0 = 1.0;
  p.f_r = 1.0;
  p.s_r = 1.0;
  p.sigma = 1.0;
  p.kappa = 0.0;
  p.A_f_override.reset();
  return p;
}

}  // namespace

TEST(DeriveGroups, IdentityCase) {
  const auto g = derive_groups(unit_params());
  EXPECT_DOUBLE_EQ(g.A_f, 1.0);
  EXPECT_DOUBLE_EQ(g.A_s, 1.0);
  EXPECT_DOUBLE_EQ(g.robin_coeff, 1.0);
  EXPECT_DOUBLE_EQ(g.t_r, 1.0);
}

TEST(DeriveGroups, HandComputedEmissionNumber) {
  auto p = unit_params();
  p.f_r = 2.0;
  p.length = 3.0;
  p.u_r = 4.0;
  p.diffusion = 6.0;
  p.sigma = 0.0;
  const auto g = derive_groups(p);
  // 2 * 9 / (4 * 6)
  EXPECT_NEAR(g.A_f, 0.75, 1e-15);
  EXPECT_EQ(g.robin_coeff, 0.0);
  EXPECT_NEAR(g.t_r, 9.0 / 6.0, 1e-15);
}

TEST(DeriveGroups, EmissionNumberOverride) {
  PhysicalParams p;
  p.A_f_override = 5.5;
  EXPECT_DOUBLE_EQ(derive_groups(p).A_f, 5.5);
}

TEST(DeriveGroups, ProductsFollowTheirFactors) {
  PhysicalParams p;
  p.gamma = 3e-3;
  const auto g = derive_groups(p);
  const double L = p.length;
  const double D = p.diffusion;
  EXPECT_NEAR(g.asphalt_coeff_base, p.kappa * L / D, 1e-12 * g.asphalt_coeff_base);
  EXPECT_NEAR(g.asphalt_coeff, 3e-3 * g.asphalt_coeff_base, 1e-12 * g.asphalt_coeff);
  EXPECT_NEAR(g.reaction_coeff, p.kappa * g.A_s, 1e-12 * g.reaction_coeff);
  EXPECT_NEAR(g.robin_coeff, 300.0 * L / D, 1e-9 * g.robin_coeff);
}

TEST(DeriveGroups, RejectsNonpositiveFieldsByName) {
  for (const char* field : {"D", "L", "u_r"}) {
    PhysicalParams p;
    if (std::string(field) == "D") p.diffusion = 0.0;
    if (std::string(field) == "L") p.length = -1.0;
    if (std::string(field) == "u_r") p.u_r = 0.0;
    try {
      derive_groups(p);
      FAIL() << "no error for " << field;
    } catch (const InvalidParameter& e) {
      EXPECT_EQ(e.field(), field);
    }
  }
}

TEST(DeriveGroups, RejectsNegativeRates) {
  PhysicalParams p;
  p.kappa = -1.0;
  EXPECT_THROW(derive_groups(p), InvalidParameter);
  p = PhysicalParams{};
  p.gamma = -1e-3;
  EXPECT_THROW(derive_groups(p), InvalidParameter);
}

TEST(DeriveGroups, ReferenceTimeIgnoresEverythingButLAndD) {
  for (double L : {0.5, 3.0, 40.0})
    for (double D : {1e-4, 0.3, 7.0}) {
      PhysicalParams p;
      p.length = L;
      p.diffusion = D;
      const auto g = derive_groups(p);
      EXPECT_NEAR(g.t_r * D / (L * L), 1.0, 1e-14);
    }
}

TEST(DeriveGroups, ScaleConsistency) {
  // L -> cL, D -> c^2 D keeps t_r; A_f is unchanged once f_r / u_r follows.
  auto p = unit_params();
  p.f_r = 1.7;
  p.u_r = 2.3;
  p.length = 1.9;
  p.diffusion = 0.4;
  const auto g = derive_groups(p);
  EXPECT_NEAR(g.A_f * p.u_r * p.diffusion / (p.f_r * p.length * p.length), 1.0, 1e-12);
  for (double c : {0.1, 3.0, 17.0}) {
    auto q = p;
    q.length *= c;
    q.diffusion *= c * c;
    const auto h = derive_groups(q);
    EXPECT_NEAR(h.t_r, g.t_r, 1e-12 * g.t_r);
    EXPECT_NEAR(h.A_f, g.A_f, 1e-12 * g.A_f);
    EXPECT_NEAR(h.A_f * q.u_r * q.diffusion / (q.f_r * q.length * q.length), 1.0, 1e-12);
  }
}

TEST(Units, ConversionTable) {
  EXPECT_NEAR(units::diffusion_from_cm2_per_s(43.8), 43.8e-4, 1e-18);
  EXPECT_NEAR(units::rate_from_per_day(86400.0), 1.0, 1e-15);
  EXPECT_NEAR(units::rate_to_per_day(units::rate_from_per_day(1.85e4)), 1.85e4, 1e-9);
}

TEST(Nondimensionalize, DomainBecomesUnitWide) {
  const auto c = nondimensionalize_config(ScenarioConfig::defaults());
  EXPECT_TRUE(c.dimensionless);
  EXPECT_NEAR(c.geometry.width, 1.0, 1e-15);
  EXPECT_NEAR(c.geometry.height, 0.2, 1e-15);
  EXPECT_NEAR(c.geometry.road_width, 0.375, 1e-15);
  EXPECT_NEAR(c.geometry.emission_box.width(), 0.375, 1e-15);
  EXPECT_NEAR(c.geometry.emission_box.height(), 0.01, 1e-15);
  EXPECT_NEAR(c.geometry.probe.x, 0.5, 1e-15);
  EXPECT_NEAR(c.groups.u0_bar, 1.0, 1e-15);
}

TEST(Nondimensionalize, RefusesDoubleScaling) {
  const auto c = nondimensionalize_config(ScenarioConfig::defaults());
  EXPECT_THROW(nondimensionalize_config(c), InvalidParameter);
}

TEST(Nondimensionalize, PreScenarioForcesGammaZero) {
  auto raw = ScenarioConfig::defaults(ScenarioTag::pre_asphalt);
  raw.physical.gamma = 0.5;
  const auto c = nondimensionalize_config(raw);
  EXPECT_EQ(c.physical.gamma, 0.0);
  EXPECT_EQ(c.groups.asphalt_coeff, 0.0);
}

TEST(Nondimensionalize, PostScenarioDefaults) {
  const auto c = nondimensionalize_config(ScenarioConfig::defaults(ScenarioTag::post_asphalt));
  EXPECT_DOUBLE_EQ(c.physical.gamma, 3e-3);
  EXPECT_DOUBLE_EQ(c.physical.kappa_per_day(), 1.85e4);
  EXPECT_GT(c.groups.asphalt_coeff, 0.0);
}

TEST(Redimensionalize, Cases) {
  PhysicalParams p;
  EXPECT_DOUBLE_EQ(redimensionalize(1.0, p), 37.0);
  p.u_r = 12.0;
  EXPECT_EQ(redimensionalize(0.0, p), 0.0);
}

TEST(Redimensionalize, RoundTrip) {
  PhysicalParams p;
  for (double ur : {0.01, 1.0, 37.0, 1e5}) {
    p.u_r = ur;
    for (double x : {1e-9, 0.3, 37.0, 123456.0})
      EXPECT_NEAR(redimensionalize(nondimensionalize_concentration(x, p), p), x, 1e-12 * x);
  }
  p.u_r = 0.0;
  EXPECT_THROW(redimensionalize(1.0, p), InvalidParameter);
}

TEST(Geometry, DefaultsAreConsistent) {
  const Geometry g;
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.road_left(), 12.5);
  EXPECT_DOUBLE_EQ(g.road_right(), 27.5);
  EXPECT_DOUBLE_EQ(g.emission_box.y0, 0.1);
  EXPECT_DOUBLE_EQ(g.emission_box.area(), 6.0);
  EXPECT_DOUBLE_EQ(g.emission_box.x0 + g.emission_box.x1, g.width);
}

TEST(Geometry, RejectsOutsideBoxAndProbe) {
  Geometry g;
  g.emission_box = {30.0, 0.1, 45.0, 0.5};
  EXPECT_THROW(g.validate(), InvalidParameter);
  g = Geometry{};
  g.probe = {20.0, 9.0};
  EXPECT_THROW(g.validate(), InvalidParameter);
  g = Geometry{};
  g.road_width = 41.0;
  EXPECT_THROW(g.validate(), InvalidParameter);
}

TEST(Numerics, Validation) {
  Numerics n;
  EXPECT_NO_THROW(n.validate());
  n.theta = 1.5;
  EXPECT_THROW(n.validate(), InvalidParameter);
  n = Numerics{};
  n.nx = 0;
  EXPECT_THROW(n.validate(), InvalidParameter);
  n = Numerics{};
  n.steps_per_day = 0;
  EXPECT_THROW(n.validate(), InvalidParameter);
}
