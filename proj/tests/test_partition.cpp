#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mixfrac/oracle.hpp"
#include "mixfrac/partition.hpp"

using namespace mixfrac;

namespace {

const CascadeSpec kBinomial{2, 1, 12, {{0.25, 0.75}, {0.5, 0.5}}, false};
const CascadeSpec kPair{2, 1, 10, {{0.25, 0.75}, {0.7, 0.3}, {0.5, 0.5}}, false};

// Direct sum of prod mu_j^q_j nu^t over boxes where all masses are positive.
long double brute_sum(const VectorMeasure& xi, const QVector& q, double t, int level,
                      std::uint64_t lo = 0, std::uint64_t hi = UINT64_MAX) {
  long double s = 0;
  for (std::uint64_t i = 0; i < xi.shape().cells_at(level); ++i) {
    if (i < lo || i >= hi || !xi.in_joint_support(level, i)) continue;
    long double term = std::pow((long double)xi.gauge().mass(level, i), (long double)t);
    for (int j = 0; j < xi.k(); ++j)
      term *= std::pow((long double)xi.analyzed(j).mass(level, i), (long double)q[j]);
    s += term;
  }
  return s;
}

}  // namespace

TEST(Partition, QVectorBasics) {
  const QVector q{1.0, -2.0};
  EXPECT_EQ(q.size(), 2u);
  EXPECT_DOUBLE_EQ(q.sum(), -1.0);
  EXPECT_EQ(QVector::unit(3, 1), (QVector{0.0, 1.0, 0.0}));
  EXPECT_THROW((QVector{NAN}), std::invalid_argument);
  const auto m = mix(QVector{1.0, 0.0}, QVector{0.0, 2.0}, 0.25);
  EXPECT_DOUBLE_EQ(m[0], 0.25);
  EXPECT_DOUBLE_EQ(m[1], 1.5);
}

TEST(Partition, LogSumMatchesBruteForce) {
  const auto xi = build_cascade(kPair);
  const PartitionEngine engine(xi);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const QVector q{u(rng), u(rng)};
    const double t = u(rng);
    for (int level : {1, 4, 8}) {
      const double ref = static_cast<double>(std::log(brute_sum(xi, q, t, level)));
      EXPECT_NEAR(engine.log_partition_sum(q, t, level), ref, 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(Partition, RegionRestrictsToSubtree) {
  const auto xi = build_cascade(kPair);
  const PartitionEngine engine(xi);
  const QVector q{0.7, -1.2};
  const BAdicBox region(2, 1, 3, 5);
  const auto [lo, hi] = region.descendants_at(7);
  const double ref = static_cast<double>(std::log(brute_sum(xi, q, 0.4, 7, lo, hi)));
  EXPECT_NEAR(engine.log_partition_sum(q, 0.4, 7, region), ref, 1e-10);
}

TEST(Partition, DegenerateSupportSkipsZeroBoxes) {
  const CascadeSpec spec{3, 1, 6, {{0.0, 0.5, 0.5}, {0.2, 0.3, 0.5}}, true};
  const auto xi = build_cascade(spec);
  const PartitionEngine engine(xi);
  const QVector q{-2.0};
  for (int level = 1; level <= 6; ++level) {
    const double ref = static_cast<double>(std::log(brute_sum(xi, q, 0.3, level)));
    EXPECT_NEAR(engine.log_partition_sum(q, 0.3, level), ref, 1e-10);
    // the oracle rejects 0^q with q < 0; compare where it is defined
    EXPECT_NEAR(engine.solve_t_star(QVector{1.5}, level), solve_B(QVector{1.5}, spec), 1e-9);
  }
  EXPECT_THROW(solve_B(q, spec), std::domain_error);
}

TEST(Partition, TStarMatchesOracleEveryLevel) {
  const auto xi = build_cascade(kBinomial);
  const PartitionEngine engine(xi);
  for (int qi = -3; qi <= 3; ++qi) {
    const QVector q{static_cast<double>(qi)};
    const double B = solve_B(q, kBinomial);
    for (int level = 1; level <= 12; ++level) EXPECT_NEAR(engine.solve_t_star(q, level), B, 1e-9);
  }
}

TEST(Partition, ConstantGaugeThrows) {
  // Root box only: every gauge mass is 1, S(q,t) does not depend on t.
  const auto xi = build_cascade({2, 1, 3, {{0.5, 0.5}, {0.5, 0.5}}, false});
  const PartitionEngine engine(xi);
  EXPECT_THROW(engine.solve_t_star(QVector{1.0}, 0), RootBracketError);
}

TEST(Partition, EstimateEnvelopesAndFit) {
  // Non-cascade measure: sample-based mu, uniform nu. t*_n varies with n.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(4000);
  for (auto& p : pts) p = {u(rng) * u(rng)};
  auto mu = ingest_samples(pts, 2, 8);
  VectorMeasure xi({mu}, uniform_tree(mu.shape()));
  const PartitionEngine engine(xi);
  const QVector q{2.0};
  const auto e = engine.estimate(q, {3, 8});
  ASSERT_EQ(e.t_star.size(), 6u);
  double mn = INFINITY, mx = -INFINITY;
  for (int n = 3; n <= 8; ++n) {
    EXPECT_NEAR(e.t_star[n - 3], engine.solve_t_star(q, n), 0.0);
    mn = std::min(mn, e.t_star[n - 3]);
    mx = std::max(mx, e.t_star[n - 3]);
  }
  EXPECT_EQ(e.b_hat, mn);
  EXPECT_EQ(e.Lambda_hat, mx);
  EXPECT_LE(e.b_hat, e.B_hat);
  EXPECT_LE(e.B_hat, e.Lambda_hat);
  // least squares of n t_n = c + s n, by the normal equations
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = 3; n <= 8; ++n) {
    const double y = n * e.t_star[n - 3];
    sx += n, sy += y, sxx += n * n, sxy += n * y;
  }
  const double slope = (6 * sxy - sx * sy) / (6 * sxx - sx * sx);
  EXPECT_NEAR(e.slope, slope, 1e-9);
  EXPECT_NEAR(e.intercept, (sy - slope * sx) / 6, 1e-9);
  EXPECT_THROW(engine.estimate(q, {7, 8}), std::invalid_argument);
  EXPECT_THROW(engine.estimate(q, {0, 8}), std::invalid_argument);
}

TEST(Partition, SurfaceKeepsGridOrder) {
  const QGrid grid{{{-1.0, 1.0, 0.5}, {0.0, 1.0, 0.5}}};
  const auto pts = grid.points();
  ASSERT_EQ(pts.size(), 15u);
  EXPECT_EQ(pts[0], (QVector{-1.0, 0.0}));
  EXPECT_EQ(pts[1], (QVector{-1.0, 0.5}));
  EXPECT_EQ(pts[3], (QVector{-0.5, 0.0}));
  const auto xi = build_cascade(kPair);
  const auto rows = qgrid_surface(xi, pts, {4, 10});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].q, pts[i]);
    ASSERT_TRUE(rows[i].estimate);
    EXPECT_NEAR(rows[i].estimate->b_hat, solve_B(pts[i], kPair), 1e-9);
  }
  EXPECT_THROW((QGrid{{{0.0, 1.0, 0.0}}}.validate()), std::invalid_argument);
  EXPECT_EQ((GridAxis{-3.0, 3.0, 0.25}.count()), 25u);
}
