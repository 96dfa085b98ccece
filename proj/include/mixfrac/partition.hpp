#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixfrac/grid.hpp"
#include "mixfrac/measure.hpp"
#include "mixfrac/root.hpp"

namespace mixfrac {

/// Exponent vector (q_1, ..., q_k).
class QVector {
 public:
  QVector() = default;
  QVector(std::initializer_list<double> q) : q_(q) { check(); }
  explicit QVector(std::vector<double> q) : q_(std::move(q)) { check(); }

  static QVector unit(int k, int i);

  std::size_t size() const { return q_.size(); }
  double operator[](std::size_t i) const { return q_[i]; }
  std::span<const double> values() const { return q_; }
  // |q| = q_1 + ... + q_k.
  double sum() const;

  bool operator==(const QVector&) const = default;
  auto operator<=>(const QVector&) const = default;

 private:
  void check() const;
  std::vector<double> q_;
};

QVector mix(const QVector& p, const QVector& q, double alpha);  // alpha p + (1-alpha) q

/// Per-q result of the level sweep.
struct DimensionEstimate {
  QVector q;
  LevelWindow window;
  std::vector<int> levels;
  std::vector<double> t_star;
  double b_hat = 0.0;       // lower envelope: min over the window
  double B_hat = 0.0;       // reported as Lambda_hat at finite levels
  double Lambda_hat = 0.0;  // upper envelope: max over the window
  // Least-squares fit of n * t*_n = intercept + slope * n over the window.
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of t*_n - (slope + intercept / n)
};

/// Joint-support columns of one grid level: natural logs of the k analyzed
/// masses and the gauge mass for every box where all k+1 masses are positive,
/// in increasing box-index order.
struct LevelTerms {
  std::vector<std::uint64_t> index;
  std::vector<std::vector<double>> log_mu;  // [j][i]
  std::vector<double> log_nu;
};

/// Evaluates partition sums S_n(q,t) = sum_Q prod_j mu_j(Q)^{q_j} nu(Q)^t over
/// the joint support and solves S_n(q,t) = 1 for t. Holds precomputed
/// log-mass columns for every level; immutable and thread-safe after
/// construction.
class PartitionEngine {
 public:
  explicit PartitionEngine(const VectorMeasure& xi, RootOptions root = {});

  int k() const { return k_; }
  const GridShape& shape() const { return shape_; }
  const LevelTerms& terms(int level) const;

  // `region` restricts the sum to the boxes below that box (a subset E of the
  // support); nullopt means the whole grid.
  double log_partition_sum(const QVector& q, double t, int level,
                           const std::optional<BAdicBox>& region = std::nullopt) const;
  double solve_t_star(const QVector& q, int level,
                      const std::optional<BAdicBox>& region = std::nullopt) const;
  DimensionEstimate estimate(const QVector& q, LevelWindow window) const;

  // Unit-sum weights rho(Q) proportional to prod mu_j^{q_j} nu^t at the root
  // t = t*_level, as logs, aligned with terms(level).
  std::vector<double> log_canonical_weights(const QVector& q, int level, double t_star) const;

  // log of the largest gauge mass on the joint support at `level`.
  double log_max_gauge(int level) const;

 private:
  struct Slice {
    std::size_t begin, end;
  };
  Slice slice(int level, const std::optional<BAdicBox>& region) const;
  std::vector<double> offsets(const QVector& q, int level, Slice s) const;

  int k_;
  GridShape shape_;
  RootOptions root_;
  std::vector<LevelTerms> levels_;
};

double log_partition_sum(const VectorMeasure& xi, const QVector& q, double t, int level);
double solve_t_star(const VectorMeasure& xi, const QVector& q, int level);
DimensionEstimate estimate_dimensions(const VectorMeasure& xi, const QVector& q, LevelWindow window);

/// One row of a q-grid sweep; `error` is set instead of `estimate` when the
/// point failed.
struct SurfaceRow {
  QVector q;
  std::optional<DimensionEstimate> estimate;
  std::string error;
};

// Grid points are evaluated concurrently; rows come back in input order.
std::vector<SurfaceRow> qgrid_surface(const PartitionEngine& engine, std::span<const QVector> qgrid,
                                      LevelWindow window);
std::vector<SurfaceRow> qgrid_surface(const VectorMeasure& xi, std::span<const QVector> qgrid,
                                      LevelWindow window);

/// Regular grid over R^k: one axis (min, max, step) per coordinate, points
/// enumerated lexicographically (first coordinate slowest).
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::size_t count() const;
  double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
  bool operator==(const GridAxis&) const = default;
};

struct QGrid {
  std::vector<GridAxis> axes;

  std::size_t k() const { return axes.size(); }
  std::size_t size() const;
  std::vector<QVector> points() const;
  // Validates step > 0 and min <= max on every axis.
  void validate() const;
  bool operator==(const QGrid&) const = default;
};

}  // namespace mixfrac
