#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mixfrac/measure.hpp"

using namespace mixfrac;

namespace {

// mass of a box = product of the weights of its digits
double path_product(const BAdicBox& box, std::span<const double> w) {
  double m = 1.0;
  for (int d : box.path()) m *= w[d];
  return m;
}

}  // namespace

TEST(Measure, CascadeMassesAreDigitProducts) {
  const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
  const auto tree = cascade_tree({2, 2, 4}, w);
  for (int n = 0; n <= 4; ++n)
    for (std::uint64_t i = 0; i < tree.shape().cells_at(n); ++i)
      EXPECT_NEAR(tree.mass(n, i), path_product(BAdicBox(2, 2, n, i), w), 1e-15);
  EXPECT_LE(tree.additivity_defect(), 1e-15);
}

TEST(Measure, TreeValidation) {
  const GridShape s{2, 1, 1};
  EXPECT_THROW(MeasureTree(s, {{0.9}, {0.45, 0.45}}), std::invalid_argument);   // root != 1
  EXPECT_THROW(MeasureTree(s, {{1.0}, {1.2, -0.2}}), std::invalid_argument);    // negative
  EXPECT_THROW(MeasureTree(s, {{1.0}, {0.5, 0.4}}), std::invalid_argument);     // additivity
  EXPECT_NO_THROW(MeasureTree(s, {{1.0}, {0.5, 0.5}}));
}

TEST(Measure, CascadeSpecValidation) {
  CascadeSpec spec{2, 1, 4, {{0.25, 0.75}, {0.5, 0.5}}, false};
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(spec.k(), 1);
  spec.weights = {{0.25, 0.75, 0.0}, {0.5, 0.5}};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.weights = {{0.25, 0.7}, {0.5, 0.5}};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.weights = {{0.0, 1.0}, {0.5, 0.5}};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.degenerate = true;
  EXPECT_NO_THROW(spec.validate());
}

TEST(Measure, VectorMeasureJointSupport) {
  CascadeSpec spec{2, 1, 3, {{0.0, 1.0}, {0.5, 0.5}}, true};
  const auto xi = build_cascade(spec);
  EXPECT_FALSE(xi.in_joint_support(1, 0));
  EXPECT_TRUE(xi.in_joint_support(1, 1));
  EXPECT_THROW(VectorMeasure({uniform_tree({2, 1, 3})}, uniform_tree({2, 1, 4})), std::invalid_argument);
}

TEST(Measure, IngestMatchesBruteForceCounts) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(500);
  for (auto& p : pts) p = {u(rng), u(rng)};
  pts.push_back({1.0, 1.0});
  const auto tree = ingest_samples(pts, 3, 3);
  for (int n = 0; n <= 3; ++n) {
    const double cells = std::pow(3.0, n);
    for (std::uint64_t i = 0; i < tree.shape().cells_at(n); ++i) {
      const auto c = BAdicBox(3, 2, n, i).coords();
      int count = 0;
      for (const auto& p : pts) {
        const auto cx = std::min<std::uint64_t>(static_cast<std::uint64_t>(p[0] * cells), static_cast<std::uint64_t>(cells) - 1);
        const auto cy = std::min<std::uint64_t>(static_cast<std::uint64_t>(p[1] * cells), static_cast<std::uint64_t>(cells) - 1);
        count += cx == c[0] && cy == c[1];
      }
      EXPECT_DOUBLE_EQ(tree.mass(n, i), count / static_cast<double>(pts.size()));
    }
  }
  EXPECT_THROW(ingest_samples(std::vector<std::vector<double>>{{0.5}, {0.5, 0.5}}, 2, 2), std::invalid_argument);
}

TEST(Measure, AhlforsIndexUniformAndBinomial) {
  const auto uni = ahlfors_index(uniform_tree({2, 1, 16}), {1, 16});
  EXPECT_EQ(uni.alpha, 1.0);
  const std::vector<double> w{0.7, 0.3};
  const auto t = ahlfors_index(cascade_tree({2, 1, 16}, w), {1, 16});
  const double expected = -std::log2(0.7);
  ASSERT_EQ(t.level_min.size(), 16u);
  for (double v : t.level_min) EXPECT_NEAR(v, expected, 1e-12);
  EXPECT_NEAR(t.alpha, 0.514573, 5e-7);
  // 2-d uniform: mass b^{-2n} against side b^{-n}
  EXPECT_NEAR(ahlfors_index(uniform_tree({3, 2, 4}), {1, 4}).alpha, 2.0, 1e-12);
}

namespace {

// Geometric brute force: enlarge box by factor a about its centre, clip to
// the unit cube, add the parent-level cells that overlap with positive volume.
double brute_doubling(const MeasureTree& tree, double a, int level) {
  const auto& s = tree.shape();
  double worst = 0.0;
  const double side = s.side(level), pside = s.side(level - 1);
  for (std::uint64_t i = 0; i < s.cells_at(level); ++i) {
    const double m = tree.mass(level, i);
    if (m <= 0.0) continue;
    const auto c = BAdicBox(s.base, s.dim, level, i).coords();
    double nb = 0.0;
    for (std::uint64_t p = 0; p < s.cells_at(level - 1); ++p) {
      const auto pc = BAdicBox(s.base, s.dim, level - 1, p).coords();
      bool overlap = true;
      for (int ax = 0; ax < s.dim; ++ax) {
        const double centre = (c[ax] + 0.5) * side;
        const double lo = std::max(0.0, centre - a * side / 2), hi = std::min(1.0, centre + a * side / 2);
        const double plo = pc[ax] * pside, phi = plo + pside;
        if (std::min(hi, phi) - std::max(lo, plo) <= 1e-15) overlap = false;
      }
      if (overlap) nb += tree.mass(level - 1, p);
    }
    worst = std::max(worst, nb / m);
  }
  return worst;
}

}  // namespace

TEST(Measure, DoublingRatioMatchesGeometry) {
  const std::vector<double> w1{0.7, 0.3};
  const auto t1 = cascade_tree({2, 1, 8}, w1);
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(doubling_ratio(t1, 2.0, n), brute_doubling(t1, 2.0, n), 1e-9);
  const std::vector<double> w2{0.1, 0.2, 0.3, 0.4};
  const auto t2 = cascade_tree({2, 2, 4}, w2);
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(doubling_ratio(t2, 1.5, n), brute_doubling(t2, 1.5, n), 1e-9);
  const std::vector<double> w3{0.2, 0.5, 0.3};
  const auto t3 = cascade_tree({3, 1, 5}, w3);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(doubling_ratio(t3, 3.0, n), brute_doubling(t3, 3.0, n), 1e-9);
  EXPECT_THROW(doubling_ratio(t1, 1.0, 2), std::invalid_argument);
  EXPECT_THROW(doubling_ratio(t1, 2.0, 9), std::invalid_argument);
}
