#include <gtest/gtest.h>

#include <random>

#include "srgkit/region_algebra.hpp"

using namespace srgkit;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 g(2024);
  return g;
}

// Rejection sample of a member of r inside the box |re|, |im| <= box.
Complex sample_member(const Region& r, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  for (;;) {
    const Complex z{u(rng()), u(rng())};
    if (r.contains(z)) return z;
  }
}

// Membership agreement on random points away from the oracle boundary.
template <class Oracle>
void expect_same_set(const Region& r, Oracle signed_margin, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  for (int i = 0; i < 4000; ++i) {
    const Complex z{u(rng()), u(rng())};
    const double m = signed_margin(z);
    if (std::abs(m) < 1e-6) continue;
    EXPECT_EQ(r.contains(z), m > 0.0) << z;
  }
}

}  // namespace

TEST(Distance, Examples) {
  EXPECT_NEAR(region_distance(Region::disc({0, 0}, 1), Region::disc({3, 0}, 1)), 1.0, 1e-12);
  EXPECT_NEAR(region_distance(Region::half_plane(0.0, 0.5), Region::half_plane(kPi, 0.0)), 0.5, 1e-12);
  // inverse of D(0,2) n {Re >= 1/2} is D(1,1) minus |z| < 1/2; the circles
  // meet at Re z = 1/8, the nearest point to the left half-plane.
  const Region a = region_invert(Region::intersection(Region::disc({0, 0}, 2), Region::half_plane(0.0, 0.5)));
  EXPECT_NEAR(region_distance(a, Region::half_plane(kPi, 0.0)), 0.125, 1e-6);
  EXPECT_EQ(region_distance(Region::disc({0, 0}, 1), Region::disc({1, 0}, 1)), 0.0);
}

TEST(Distance, SymmetricWithWitnesses) {
  const Region a = Region::cascade({1.0, 1.0});
  const Region b = Region::disc({-3.0, 0.0}, 0.5);
  const auto ab = region_distance_report(a, b);
  const auto ba = region_distance_report(b, a);
  EXPECT_NEAR(ab.value, ba.value, 1e-9);
  EXPECT_NEAR(std::abs(ab.witness_a - ab.witness_b), ab.value, 1e-6);
  EXPECT_TRUE(a.contains(ab.witness_a));
  EXPECT_TRUE(b.contains(ab.witness_b));
}

TEST(Affine, ScaleAndShiftExamples) {
  expect_same_set(region_scale(Region::disc({0.5, 0}, 0.5), 2.0),
                  [](Complex z) { return 1.0 - std::abs(z - 1.0); }, 3.0);
  expect_same_set(region_shift(Region::half_plane(0.0, 0.0), 1.0), [](Complex z) { return z.real() - 1.0; }, 3.0);
  expect_same_set(region_scale(Region::disc({1.0, 0}, 0.5), -0.5),
                  [](Complex z) { return 0.25 - std::abs(z + 0.5); }, 1.5);
}

TEST(Invert, Examples) {
  // 1/z maps the circle |z - 1| = 1 onto Re w = 1/2
  expect_same_set(region_invert(Region::disc({1.0, 0}, 1.0)), [](Complex z) { return z.real() - 0.5; }, 4.0);
  expect_same_set(region_invert(Region::annular_sector(1.0, 2.0, 0.6)),
                  [](Complex z) {
                    const double r = std::abs(z);
                    return std::min({r - 0.5, 1.0 - r, 0.6 - std::abs(std::arg(z))});
                  },
                  1.5);
  const Region d = Region::disc({3.0, 0}, 1.0);
  EXPECT_LE(boundary_hausdorff(region_invert(region_invert(d)), d), 1e-9);
}

TEST(Invert, PointwiseSoundness) {
  const Region a = Region::intersection(Region::disc({1.0, 0}, 2.0), Region::half_plane(0.0, 0.25));
  const Region inv = region_invert(a);
  for (int i = 0; i < 2000; ++i) {
    const Complex z = sample_member(a, 3.0);
    EXPECT_TRUE(inv.contains(1.0 / z)) << z;
  }
}

TEST(Sum, DiscsAreExact) {
  expect_same_set(minkowski_sum(Region::disc({1, 0}, 1), Region::disc({2, 0}, 0.5)),
                  [](Complex z) { return 1.5 - std::abs(z - 3.0); }, 5.0);
  // adding the point 0 is the identity
  const Region c = Region::cascade({1.0, 1.0});
  EXPECT_LE(boundary_hausdorff(minkowski_sum(c, Region::point({0, 0})), c), 1e-12);
}

TEST(Sum, RandomPairsAreContained) {
  const Region a = Region::cascade({1.0, 0.5});
  const Region b = Region::intersection(Region::disc({0.0, 0.0}, 1.5), Region::half_plane(0.0, 0.2));
  const Region s = minkowski_sum(a, b);
  EXPECT_TRUE(s.outer_bound());
  for (int i = 0; i < 10000; ++i) {
    const Complex x = sample_member(a, 2.0), y = sample_member(b, 2.0);
    EXPECT_TRUE(s.contains(x + y));
    EXPECT_TRUE(s.contains(x + std::conj(y)));
  }
  EXPECT_THROW(minkowski_sum(a, Region::half_plane(0.0, 0.0)), InputError);
}

TEST(Product, SectorsAndIdentity) {
  expect_same_set(region_product(Region::annular_sector(1, 2, 0.3), Region::annular_sector(0.5, 1, 0.4)),
                  [](Complex z) {
                    const double r = std::abs(z);
                    return std::min({r - 0.5, 2.0 - r, 0.7 - std::abs(std::arg(z))});
                  },
                  3.0);
  const Region c = Region::cascade({1.0});
  EXPECT_LE(boundary_hausdorff(region_product(c, Region::point({1, 0})), c), 1e-12);
}

TEST(Product, SampledDiscsContained) {
  const Region a = Region::disc({1.0, 0.0}, 0.5);
  const Region b = Region::disc({0.5, 0.0}, 0.5);
  const Region p = region_product(a, b);
  for (int i = 0; i < 5000; ++i) {
    const Complex x = sample_member(a, 2.0), y = sample_member(b, 2.0);
    EXPECT_TRUE(p.contains(x * y));
    EXPECT_TRUE(p.contains(x * std::conj(y)));
  }
}

TEST(Product, CascadeOfTwoContainsProductOfBoundaries) {
  // two unit output-strict systems: D(1/2, 1/2) each
  const Region c2 = Region::cascade({1.0, 1.0});
  const Region d = Region::disc({0.5, 0.0}, 0.5);
  for (int i = 0; i < 5000; ++i) {
    const Complex x = sample_member(d, 1.0), y = sample_member(d, 1.0);
    EXPECT_TRUE(c2.contains(x * y)) << x << y;
  }
}

TEST(Closure, ChordAndArc) {
  // the chord from e^{j} to e^{-j} leaves the sector at Re z = cos 1 < 1
  const Region sector = Region::annular_sector(1.0, 2.0, 1.0);
  EXPECT_FALSE(has_chord_property(sector));
  const Region cc = chord_closure(sector);
  EXPECT_TRUE(has_chord_property(cc));
  EXPECT_TRUE(cc.contains({std::cos(1.0), 0.0}));
  EXPECT_FALSE(has_arc_property(Region::disc({0.0, 1.5}, 0.5), ArcSide::kRight));
  const Region ac = right_arc_closure(Region::disc({0.0, 1.5}, 0.5));
  EXPECT_TRUE(has_arc_property(ac, ArcSide::kRight));
  EXPECT_TRUE(ac.contains({1.5, 0.0}));
  EXPECT_TRUE(has_chord_property(Region::disc({1.0, 0.0}, 1.0)));
  EXPECT_TRUE(has_arc_property(Region::annular_sector(1, 2, 1), ArcSide::kRight));
}

TEST(Invert, DistanceToMinusOneBound) {
  // |1/z + 1| = |z + 1| / |z|: margins of A from -1 and of 1/A from -1
  // agree up to the modulus range of A.
  const Region a = Region::cascade({1.0, 1.0});
  const double d = region_distance(a, Region::point({-1, 0}));
  const double di = region_distance(region_invert(a), Region::point({-1, 0}));
  double rmax = 0.0;
  for (auto z : a.boundary_points()) rmax = std::max(rmax, std::abs(z));
  EXPECT_GE(di, d / rmax - 1e-9);
}
