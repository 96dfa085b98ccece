#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mixfrac/grid.hpp"

namespace mixfrac {

/// Mass assignment of one probability measure on every box of a b-adic grid
/// down to max_level. Masses are stored densely per level, indexed by box
/// index. Immutable after construction.
class MeasureTree {
 public:
  MeasureTree() = default;
  // Validates root mass 1, non-negativity and additivity (within 1e-12).
  MeasureTree(GridShape shape, std::vector<std::vector<double>> levels);

  const GridShape& shape() const { return shape_; }
  int max_level() const { return shape_.max_level; }
  std::span<const double> level(int n) const;
  double mass(int level, std::uint64_t index) const;
  double mass(const BAdicBox& box) const;

  // Largest deviation |mass(Q) - sum of children| over all internal boxes.
  double additivity_defect() const;

 private:
  GridShape shape_;
  std::vector<std::vector<double>> levels_;
};

/// The tuple (mu_1, ..., mu_k, nu): k analyzed trees and one gauge tree on a
/// shared grid.
class VectorMeasure {
 public:
  VectorMeasure(std::vector<MeasureTree> analyzed, MeasureTree gauge);

  int k() const { return static_cast<int>(analyzed_.size()); }
  const GridShape& shape() const { return gauge_.shape(); }
  const std::vector<MeasureTree>& analyzed() const { return analyzed_; }
  const MeasureTree& analyzed(int j) const { return analyzed_.at(j); }
  const MeasureTree& gauge() const { return gauge_; }

  // Every one of the k+1 masses of box `index` at `level` is positive.
  bool in_joint_support(int level, std::uint64_t index) const;

 private:
  std::vector<MeasureTree> analyzed_;
  MeasureTree gauge_;
};

/// Weights of a multiplicative cascade: k analyzed weight vectors followed by
/// the gauge weight vector, each of length base^dim.
struct CascadeSpec {
  int base = 2;
  int dim = 1;
  int levels = 0;
  std::vector<std::vector<double>> weights;
  // Permits zero entries.
  bool degenerate = false;

  int k() const { return static_cast<int>(weights.size()) - 1; }
  std::span<const double> analyzed(int j) const { return weights.at(j); }
  std::span<const double> gauge() const { return weights.back(); }
  GridShape shape() const { return {base, dim, levels}; }

  // Throws std::invalid_argument naming the offending weight vector.
  void validate() const;
  bool operator==(const CascadeSpec&) const = default;
};

MeasureTree cascade_tree(const GridShape& shape, std::span<const double> weights);
VectorMeasure build_cascade(const CascadeSpec& spec);

// Lebesgue measure on the grid: every box at level n has mass base^(-n*dim).
MeasureTree uniform_tree(const GridShape& shape);

// Empirical measure of a point set. Each point must have the same number of
// coordinates (the grid dimension), all inside [0,1].
MeasureTree ingest_samples(std::span<const std::vector<double>> points, int base,
                           int max_level);

struct AhlforsTrace {
  double alpha = 0.0;
  std::vector<int> levels;
  std::vector<double> level_min;
};

// Largest alpha for which mass(Q) / side(Q)^alpha stays bounded over the
// positive boxes of the window: min over levels and boxes of
// log mass(Q) / log side(Q).
AhlforsTrace ahlfors_index(const MeasureTree& tree, LevelWindow window);

// Max over positive boxes Q at `level` of mass(N(Q)) / mass(Q), where N(Q)
// is the union of parent-level boxes meeting the a-enlargement of Q (the
// concentric box with a times the side length), clipped to [0,1]^d.
// Requires 1 < a <= base.
double doubling_ratio(const MeasureTree& tree, double a, int level);

}  // namespace mixfrac
