#include <gtest/gtest.h>

#include <random>

#include "srgkit/region_algebra.hpp"
#include "srgkit/srg.hpp"

using namespace srgkit;

namespace {

// z-point of a signal pair: gain e^{+-j angle}, angle from the inner product
Complex z_of(const std::vector<double>& du, const std::vector<double>& dy) {
  double uu = 0, yy = 0, uy = 0;
  for (std::size_t i = 0; i < du.size(); ++i) {
    uu += du[i] * du[i];
    yy += dy[i] * dy[i];
    uy += du[i] * dy[i];
  }
  if (yy == 0.0) return {0.0, 0.0};
  const double gain = std::sqrt(yy / uu);
  const double c = std::clamp(uy / std::sqrt(uu * yy), -1.0, 1.0);
  return std::polar(gain, std::acos(c));
}

}  // namespace

TEST(ClassSrg, Discs) {
  const Region g = class_srg(OperatorClass::gain_bound(2.0));
  EXPECT_TRUE(g.contains({0.0, 2.0}));
  EXPECT_FALSE(g.contains({2.0, 0.1}));
  const Region os = class_srg(OperatorClass::output_strict(0.5));  // D(1, 1)
  EXPECT_TRUE(os.contains({0.0, 0.0}));
  EXPECT_TRUE(os.contains({2.0, 0.0}));
  EXPECT_TRUE(os.contains({1.0, 1.0}));
  EXPECT_FALSE(os.contains({2.0, 0.5}));
  const Region sec = class_srg(OperatorClass::sector(1.0, 3.0));  // D(2, 1)
  EXPECT_TRUE(sec.contains({1.0, 0.0}));
  EXPECT_FALSE(sec.contains({0.9, 0.0}));
  EXPECT_TRUE(class_srg(OperatorClass::incrementally_positive()).includes_infinity());
  EXPECT_TRUE(class_srg(OperatorClass::input_strict(0.5)).contains({0.5, 100.0}));
  EXPECT_THROW(class_srg(OperatorClass::gain_bound(0.0)), InputError);
  EXPECT_THROW(class_srg(OperatorClass::sector(3.0, 1.0)), InputError);
}

TEST(LtiSrg, ContainsNyquistSamples) {
  const auto tf = parse_tf("2/((s+1)*(s+2))");
  const auto omegas = frequency_grid(tf);
  const Region r = lti_srg(tf, omegas);
  double peak = 0.0;
  for (double w : omegas) {
    const Complex s{0.0, w};
    const Complex g = 2.0 / ((s + 1.0) * (s + 2.0));
    peak = std::max(peak, std::abs(g));
    EXPECT_TRUE(r.contains(g)) << w;
    EXPECT_TRUE(r.contains(std::conj(g))) << w;
  }
  // off-grid frequencies: the sampled hull sags by at most the chord sag
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lw(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double w = std::pow(10.0, lw(rng));
    const Complex s{0.0, w};
    EXPECT_LE(point_region_distance(2.0 / ((s + 1.0) * (s + 2.0)), r).value, 1e-5) << w;
  }
  double rmax = 0.0;
  for (auto z : r.boundary_points()) rmax = std::max(rmax, std::abs(z));
  EXPECT_NEAR(rmax, peak, 1e-9);
  EXPECT_FALSE(r.contains({-0.5, 0.0}));
  EXPECT_FALSE(r.includes_infinity());
}

TEST(LtiSrg, RealAxisCrossingIsExact) {
  // 10/(j w + 1)^3 = -10/8 at w = sqrt 3, between grid points
  const Region r = lti_srg(parse_tf("10/(s+1)^3"));
  EXPECT_TRUE(r.contains({-1.25, 0.0}));
  EXPECT_FALSE(r.contains({-1.25 - 1e-6, 0.0}));
}

TEST(LtiSrg, PassiveSystemStaysInRightHalfPlane) {
  const Region r = lti_srg(parse_tf("(s+2)/((s+1)*(s+3))"));
  for (auto z : r.boundary_points()) EXPECT_GE(z.real(), -1e-9);
  EXPECT_THROW(lti_srg(parse_tf("1/(s-1)")), PreconditionError);
}

TEST(LtiSrg, FirstOrderLagIsItsCircle) {
  // Nyquist of 1/(s+1) lies on |z - 1/2| = 1/2, a geodesic: the hull adds nothing
  const Region r = lti_srg(parse_tf("1/(s+1)"));
  for (double w : {0.1, 1.0, 10.0}) EXPECT_TRUE(r.contains(1.0 / Complex{1.0, w}));
  EXPECT_FALSE(r.contains({0.5, 0.0}));
}

TEST(StaticSrg, SaturationContainsSampledPairs) {
  const Region r = saturation_srg();
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto sat = [](double x) { return std::clamp(x, -1.0, 1.0); };
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> du(4), dy(4);
    for (int k = 0; k < 4; ++k) {
      const double a = u(rng), b = u(rng);
      du[k] = a - b;
      dy[k] = sat(a) - sat(b);
    }
    if (std::sqrt(du[0] * du[0] + du[1] * du[1] + du[2] * du[2] + du[3] * du[3]) < 1e-6) continue;
    EXPECT_TRUE(r.contains(z_of(du, dy)));
  }
  EXPECT_TRUE(elbow_circle().contains({0.5, 0.5}));
  EXPECT_FALSE(elbow_circle().contains({0.5, 0.0}));
  EXPECT_THROW(saturating_disc(0.0, 1.0), InputError);
}

TEST(CascadeSrg, SingleStageIsOutputStrictDisc) {
  const Region c = cascade_srg({2.0});
  const Region d = class_srg(OperatorClass::output_strict(0.5));
  EXPECT_LE(boundary_hausdorff(c, d), 1e-6);
}

TEST(CascadeSrg, BoundaryFormula) {
  const std::vector<double> g{1.0, 2.0, 0.5};
  EXPECT_LE(std::abs(cascade_boundary_point(g, 0.0) - Complex{1.0, 0.0}), 1e-15);
  // phi = 3 pi / 2 with n = 3: cos(pi/2)^3 = 0
  EXPECT_LE(std::abs(cascade_boundary_point(g, 1.5 * kPi)), 1e-15);
  const Region r = cascade_srg(g);
  for (double phi = 0.05; phi < 3.0; phi += 0.1) EXPECT_TRUE(r.contains(cascade_boundary_point(g, phi)));
  // the negative-axis intercept at phi = pi: -cos(pi/3)^3
  EXPECT_TRUE(r.contains({-0.125 + 1e-6, 0.0}));
  EXPECT_FALSE(r.contains({-0.125 - 1e-3, 0.0}));
}

TEST(CascadeSrg, FirstOrderNonlinearBound) {
  EXPECT_LE(boundary_hausdorff(first_order_nl_srg(1.0, 2.0), cascade_srg({1.0, 2.0})), 1e-12);
  EXPECT_THROW(first_order_nl_srg(0.0, 1.0), InputError);
}
