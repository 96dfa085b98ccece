#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixfrac/grid.hpp"
#include "mixfrac/measure.hpp"
#include "mixfrac/oracle.hpp"
#include "mixfrac/partition.hpp"

namespace mixfrac {

/// A function q -> value sampled on a regular grid, values in grid order.
struct QTable {
  QGrid grid;
  std::vector<double> values;
};

struct LegendreResult {
  double value = 0.0;
  QVector argmin;
};

// min over the grid of <gamma, q> + value(q). Ties go to the
// lexicographically smallest q (the first in grid order).
LegendreResult legendre(const QTable& table, std::span<const double> gamma);

// As above, then, when the grid minimizer is interior and `fn` is given,
// refines by cyclic golden-section search over [q_i - step_i, q_i + step_i]
// in each coordinate. The refined value never exceeds the grid value.
LegendreResult legendre(const QTable& table, std::span<const double> gamma,
                        const std::function<double(const QVector&)>& fn);

// Chhabra-type estimate from the canonical weights
// rho(Q) = prod_j mu_j(Q)^{q_j} nu(Q)^{t*} / S_n(q, t*):
//   gamma_j = sum rho ln mu_j / sum rho ln nu,
//   f       = sum rho ln rho / sum rho ln nu.
SpectrumPoint canonical_spectrum(const PartitionEngine& engine, const QVector& q, int level);
SpectrumPoint canonical_spectrum(const VectorMeasure& xi, const QVector& q, int level);

enum class SpectrumMethod { oracle, legendre, canonical, histogram };
std::string to_string(SpectrumMethod m);

struct SpectrumCurve {
  SpectrumMethod method = SpectrumMethod::histogram;
  std::vector<SpectrumPoint> samples;
  int level = 0;
  std::vector<double> delta;  // histogram bin widths per coordinate
  std::vector<QVector> qgrid;  // canonical / oracle / legendre curves
};

// Ratio vector log mu_j(Q) / log nu(Q) of every joint-support box at `level`,
// aligned with engine.terms(level).
std::vector<std::vector<double>> box_ratios(const PartitionEngine& engine, int level);

// 0.05 * (max - min) of the observed ratios per coordinate; 0.05 for a
// coordinate with no spread.
std::vector<double> default_delta(const PartitionEngine& engine, int level);

// The s solving sum_{Q in family} nu(Q)^s = 1: the nu-weighted covering
// exponent of a box family. Reduces to log(count) / (level ln b) for
// uniform nu.
double relative_dimension(std::span<const double> log_nu);
double relative_dimension(const VectorMeasure& xi, std::span<const BAdicBox> boxes);

// Boxes binned by floor(ratio_j / delta_j) (bins anchored at 0). Each
// sample's gamma is the mean ratio of its boxes and its value the relative
// dimension of the bin; empty bins are omitted. Samples are ordered by bin
// key.
SpectrumCurve histogram_spectrum(const PartitionEngine& engine, int level,
                                 std::optional<std::vector<double>> delta = std::nullopt);
SpectrumCurve histogram_spectrum(const VectorMeasure& xi, int level,
                                 std::optional<std::vector<double>> delta = std::nullopt);

struct LocalDim {
  std::vector<int> path;
  std::vector<int> levels;
  std::vector<std::vector<double>> ratios;  // [level][j]
  std::vector<double> upper;                // max over the window per j
  std::vector<double> lower;                // min over the window per j
};

LocalDim local_dimension(const VectorMeasure& xi, std::span<const int> path, LevelWindow window);

// Boxes at `level` whose ratio vector lies within delta_j of gamma_j in every
// coordinate.
std::vector<BAdicBox> classify_boxes(const VectorMeasure& xi, std::span<const double> gamma,
                                     std::span<const double> delta, int level);

}  // namespace mixfrac
