#include <gtest/gtest.h>

#include "srgkit/sim.hpp"
#include "srgkit/srg.hpp"

using namespace srgkit;

TEST(Sim, ZeroOrderHoldStepResponse) {
  const Signal u = constant_signal(1.0, 2.0);
  const Signal y = apply_operator(OperatorSpec::lti(parse_tf("1/(s+1)")), u);
  ASSERT_EQ(y.size(), u.size());
  for (std::size_t k = 0; k < y.size(); k += 37) {
    EXPECT_NEAR(y.samples[k], 1.0 - std::exp(-static_cast<double>(k) * u.dt), 1e-12) << k;
  }
  // direct feedthrough
  const Signal g = apply_operator(OperatorSpec::lti(parse_tf("(s+2)/(s+1)")), u);
  EXPECT_NEAR(g.samples[0], 1.0, 1e-12);
  EXPECT_THROW(apply_operator(OperatorSpec::lti(parse_tf("s+1")), u), InputError);
}

TEST(Sim, StaticMaps) {
  const StaticNL sat{StaticNL::Kind::kSaturation, {}};
  EXPECT_EQ(static_map(sat, 3.0), 1.0);
  EXPECT_EQ(static_map(sat, -0.5), -0.5);
  EXPECT_EQ(static_map({StaticNL::Kind::kRelu, {}}, -2.0), 0.0);
  EXPECT_EQ(static_map({StaticNL::Kind::kDeadzone, {}}, 1.5), 0.5);
  EXPECT_EQ(static_map({StaticNL::Kind::kDeadzone, {}}, -0.5), 0.0);
  const auto t = OperatorSpec::table({{1.0, 2.0}, {0.0, 0.0}, {2.0, 3.0}});
  const auto& nl = std::get<StaticNL>(t.node);
  EXPECT_EQ(static_map(nl, 0.5), 1.0);
  EXPECT_EQ(static_map(nl, 3.0), 4.0);   // extrapolated with the last slope
  EXPECT_EQ(static_map(nl, -1.0), -2.0); // and the first
  EXPECT_THROW(OperatorSpec::table({{0.0, 0.0}}), InputError);
}

TEST(Sim, DelaySnapping) {
  const auto d = snapped_delays(OperatorSpec::cascade({OperatorSpec::delay(0.3), OperatorSpec::gain(2.0)}));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first, 0.3);
  EXPECT_EQ(d[0].second, 77.0 / 256.0);
  Signal u{kDefaultDt, std::vector<double>(100, 0.0)};
  u.samples[0] = 1.0;
  const Signal y = apply_operator(OperatorSpec::delay(10.0 / 256.0), u);
  EXPECT_EQ(y.samples[10], 1.0);
  EXPECT_EQ(y.samples[9], 0.0);
}

TEST(Sim, ZPointConventions) {
  const Signal a{1.0, {1.0, 0.0}}, b{1.0, {0.0, 1.0}}, zero{1.0, {0.0, 0.0}};
  EXPECT_FALSE(z_point(a, a, a, a).has_value());
  const auto inf = z_point(a, a, a, b);
  ASSERT_TRUE(inf);
  EXPECT_TRUE(inf->infinite);
  EXPECT_FALSE(inf->angle_defined);
  const auto flat = z_point(a, b, zero, zero);
  ASSERT_TRUE(flat);
  EXPECT_EQ(flat->gain, 0.0);
  EXPECT_FALSE(flat->angle_defined);
  EXPECT_EQ(flat->point(), Complex(0.0, 0.0));
  // dy = -du: gain 1, angle pi
  const auto neg = z_point(a, b, b, a);
  ASSERT_TRUE(neg);
  EXPECT_NEAR(neg->gain, 1.0, 1e-15);
  EXPECT_NEAR(neg->angle, kPi, 1e-15);
}

TEST(Sim, ElbowProbeExample) {
  // u1 = 1, u2 = 1.25 then 0.75 switching at 0.5 s through saturation:
  // gain 1/sqrt 2 at angle pi/4, i.e. 0.5 + 0.5j
  SampleOptions o;
  const auto p = detail::square_probe(256, o);  // j = 128: tau = 0.5 s
  EXPECT_EQ(p.u2.samples[127], 1.25);
  EXPECT_EQ(p.u2.samples[128], 0.75);
  const auto sat = OperatorSpec::saturation();
  const auto z = z_point(p.u1, p.u2, apply_operator(sat, p.u1), apply_operator(sat, p.u2));
  ASSERT_TRUE(z);
  EXPECT_LE(std::abs(z->point() - Complex{0.5, 0.5}), 1e-12);
}

TEST(Sim, SinusoidProbesApproachNyquist) {
  SampleOptions o;
  o.horizon = 200.0;
  o.frequencies = {1.0, 10.0};
  const auto cloud = sample_srg(OperatorSpec::lti(parse_tf("1/(s+1)")), Strategy::kSinusoid, 2, o);
  ASSERT_EQ(cloud.points.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const Complex g = 1.0 / Complex{1.0, o.frequencies[i]};
    EXPECT_LE(std::abs(cloud.points[i].point() - std::conj(g)), 2e-2) << i;
  }
}

TEST(Sim, SlopeRestrictedTableStaysInSectorDisc) {
  // slopes between 0.5 and 2: every scaled-graph point lies in D(1.25, 0.75)
  const auto op = OperatorSpec::table({{-2.0, -4.0}, {0.0, 0.0}, {1.0, 0.5}, {3.0, 4.5}});
  const Region disc = class_srg(OperatorClass::sector(0.5, 2.0));
  for (Strategy s : {Strategy::kSquareWave, Strategy::kRandomPc}) {
    const auto cloud = sample_sg_constant_inputs(op, {-1.0, 0.5, 2.0}, s, 200);
    const auto rep = check_inclusion(cloud.points, disc, 1e-9);
    EXPECT_TRUE(rep.pass) << to_string(s) << " worst " << rep.worst_violation;
  }
}

TEST(Sim, RegionSlack) {
  EXPECT_NEAR(region_slack(Region::disc({0.5, 0.0}, 0.5), {1.0, 1.0}), 0.5 - std::abs(Complex{0.5, 1.0}), 1e-12);
  EXPECT_NEAR(region_slack(Region::disc({0.5, 0.0}, 0.5), {0.5, 0.0}), 0.5, 1e-12);
}

TEST(Sim, FeedbackNonConvergence) {
  const auto loop = OperatorSpec::feedback(OperatorSpec::gain(2.0), OperatorSpec::gain(1.0));
  EXPECT_THROW(apply_operator(loop, constant_signal(1.0, 0.1)), NumericalError);
  // contraction: y = 0.5 (u - y) gives y = u / 3
  const auto ok = OperatorSpec::feedback(OperatorSpec::gain(0.5), OperatorSpec::gain(1.0));
  EXPECT_NEAR(apply_operator(ok, constant_signal(3.0, 0.1)).samples[0], 1.0, 1e-11);
}

TEST(Sim, RandomProbesAreDeterministic) {
  SampleOptions o;
  o.seed = 42;
  const auto op = OperatorSpec::cascade({OperatorSpec::saturation(), OperatorSpec::lti(parse_tf("1/(s+1)"))});
  const auto a = sample_srg(op, Strategy::kRandomPc, 20, o);
  const auto b = sample_srg(op, Strategy::kRandomPc, 20, o);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].gain, b.points[i].gain);
    EXPECT_EQ(a.points[i].angle, b.points[i].angle);
  }
  o.seed = 43;
  EXPECT_NE(sample_srg(op, Strategy::kRandomPc, 1, o).points[0].gain, a.points[0].gain);
}

TEST(Sim, OperatorJson) {
  const auto op = operator_from_json(nlohmann::json::parse(
      R"j({"type": "feedback", "forward": {"type": "cascade", "parts": [{"type": "delay", "T": 0.25},
          {"type": "lti", "tf": "1/(s+1)"}]}, "backward": {"type": "static", "kind": "saturation"}})j"));
  EXPECT_TRUE(std::holds_alternative<FeedbackOp>(op.node));
  EXPECT_THROW(operator_from_json(nlohmann::json::parse(R"({"type": "warp"})")), InputError);
  EXPECT_THROW(operator_from_json(nlohmann::json::parse(R"({"type": "gain"})")), InputError);
  EXPECT_EQ(parse_strategy("random"), Strategy::kRandomPc);
  EXPECT_THROW(parse_strategy("chaos"), InputError);
}
