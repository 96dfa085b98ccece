#include "mixfrac/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixfrac {

namespace {

constexpr double kMassTol = 1e-12;
constexpr std::uint64_t kMaxStoredCells = std::uint64_t{1} << 27;

void check_storage(const GridShape& shape) {
  std::uint64_t total = 0;
  for (int n = 0; n <= shape.max_level; ++n) total += shape.cells_at(n);
  if (total > kMaxStoredCells)
    throw std::invalid_argument("grid too large for dense storage: " + std::to_string(total) +
                                " cells");
}

}  // namespace

MeasureTree::MeasureTree(GridShape shape, std::vector<std::vector<double>> levels)
    : shape_(shape), levels_(std::move(levels)) {
  shape_.validate();
  if (static_cast<int>(levels_.size()) != shape_.max_level + 1)
    throw std::invalid_argument("measure tree needs one mass array per level");
  for (int n = 0; n <= shape_.max_level; ++n) {
    if (levels_[n].size() != shape_.cells_at(n))
      throw std::invalid_argument("mass array at level " + std::to_string(n) +
                                  " has the wrong size");
    for (double m : levels_[n])
      if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("masses must be finite and non-negative");
  }
  if (std::abs(levels_[0][0] - 1.0) > kMassTol)
    throw std::invalid_argument("root mass must be 1");
  if (additivity_defect() > kMassTol)
    throw std::invalid_argument("child masses do not sum to the parent mass");
}

std::span<const double> MeasureTree::level(int n) const {
  if (n < 0 || n > shape_.max_level)
    throw std::out_of_range("level " + std::to_string(n) + " outside [0, max_level]");
  return levels_[n];
}

double MeasureTree::mass(int level, std::uint64_t index) const {
  return this->level(level)[index];
}

double MeasureTree::mass(const BAdicBox& box) const {
  if (box.base() != shape_.base || box.dim() != shape_.dim)
    throw std::invalid_argument("box does not belong to this grid");
  return mass(box.level(), box.index());
}

double MeasureTree::additivity_defect() const {
  const auto b = shape_.branching();
  double worst = 0.0;
  for (int n = 0; n < shape_.max_level; ++n) {
    const auto& parent = levels_[n];
    const auto& child = levels_[n + 1];
    for (std::size_t i = 0; i < parent.size(); ++i) {
      double s = 0.0;
      for (std::uint64_t c = 0; c < b; ++c) s += child[i * b + c];
      worst = std::max(worst, std::abs(s - parent[i]));
    }
  }
  return worst;
}

VectorMeasure::VectorMeasure(std::vector<MeasureTree> analyzed, MeasureTree gauge)
    : analyzed_(std::move(analyzed)), gauge_(std::move(gauge)) {
  if (analyzed_.empty()) throw std::invalid_argument("vector measure needs k >= 1");
  for (const auto& t : analyzed_)
    if (!(t.shape() == gauge_.shape()))
      throw std::invalid_argument("all trees of a vector measure must share one grid");
  // The joint support is nested, so a positive finest-level box suffices.
  const int top = gauge_.max_level();
  const auto cells = gauge_.level(top).size();
  bool any = false;
  for (std::uint64_t i = 0; i < cells && !any; ++i) any = in_joint_support(top, i);
  if (!any) throw std::invalid_argument("joint support of the vector measure is empty");
}

bool VectorMeasure::in_joint_support(int level, std::uint64_t index) const {
  if (!(gauge_.mass(level, index) > 0.0)) return false;
  for (const auto& t : analyzed_)
    if (!(t.mass(level, index) > 0.0)) return false;
  return true;
}

void CascadeSpec::validate() const {
  shape().validate();
  check_storage(shape());
  if (weights.size() < 2)
    throw std::invalid_argument("cascade needs at least one analyzed and one gauge weight vector");
  const auto b = shape().branching();
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const std::string name =
        j + 1 == weights.size() ? "gauge weights" : "weights of measure " + std::to_string(j + 1);
    if (weights[j].size() != b)
      throw std::invalid_argument(name + ": expected " + std::to_string(b) + " entries, got " +
                                  std::to_string(weights[j].size()));
    double sum = 0.0;
    for (double w : weights[j]) {
      if (!std::isfinite(w) || w < 0.0 || w > 1.0)
        throw std::invalid_argument(name + ": entries must lie in [0,1]");
      if (w == 0.0 && !degenerate)
        throw std::invalid_argument(name + ": zero entry in a non-degenerate cascade");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kMassTol)
      throw std::invalid_argument(name + ": entries sum to " + std::to_string(sum) + ", not 1");
  }
}

MeasureTree cascade_tree(const GridShape& shape, std::span<const double> weights) {
  shape.validate();
  check_storage(shape);
  const auto b = shape.branching();
  if (weights.size() != b) throw std::invalid_argument("cascade weights must have base^dim entries");
  std::vector<std::vector<double>> levels(shape.max_level + 1);
  levels[0] = {1.0};
  for (int n = 1; n <= shape.max_level; ++n) {
    const auto& up = levels[n - 1];
    auto& cur = levels[n];
    cur.resize(up.size() * b);
    for (std::size_t i = 0; i < up.size(); ++i)
      for (std::uint64_t c = 0; c < b; ++c) cur[i * b + c] = up[i] * weights[c];
  }
  return {shape, std::move(levels)};
}

VectorMeasure build_cascade(const CascadeSpec& spec) {
  spec.validate();
  std::vector<MeasureTree> analyzed;
  for (int j = 0; j < spec.k(); ++j) analyzed.push_back(cascade_tree(spec.shape(), spec.analyzed(j)));
  return {std::move(analyzed), cascade_tree(spec.shape(), spec.gauge())};
}

MeasureTree uniform_tree(const GridShape& shape) {
  const auto b = shape.branching();
  std::vector<double> w(b, 1.0 / static_cast<double>(b));
  return cascade_tree(shape, w);
}

MeasureTree ingest_samples(std::span<const std::vector<double>> points, int base, int max_level) {
  if (points.empty()) throw std::invalid_argument("ingest_samples: no points");
  const int dim = static_cast<int>(points.front().size());
  const GridShape shape{base, dim, max_level};
  shape.validate();
  check_storage(shape);

  const auto b = shape.branching();
  std::vector<std::vector<std::uint64_t>> counts(max_level + 1);
  counts[max_level].assign(shape.cells_at(max_level), 0);
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("ingest_samples: points have inconsistent dimension");
    counts[max_level][BAdicBox::containing(base, max_level, p).index()] += 1;
  }
  for (int n = max_level - 1; n >= 0; --n) {
    counts[n].assign(shape.cells_at(n), 0);
    for (std::size_t i = 0; i < counts[n].size(); ++i)
      for (std::uint64_t c = 0; c < b; ++c) counts[n][i] += counts[n + 1][i * b + c];
  }
  const double total = static_cast<double>(points.size());
  std::vector<std::vector<double>> levels(max_level + 1);
  for (int n = 0; n <= max_level; ++n) {
    levels[n].resize(counts[n].size());
    for (std::size_t i = 0; i < counts[n].size(); ++i)
      levels[n][i] = static_cast<double>(counts[n][i]) / total;
  }
  return {shape, std::move(levels)};
}

AhlforsTrace ahlfors_index(const MeasureTree& tree, LevelWindow window) {
  if (window.first < 1 || window.last < window.first)
    throw std::invalid_argument("ahlfors_index: window must satisfy 1 <= first <= last");
  if (window.last > tree.max_level())
    throw std::invalid_argument("ahlfors_index: window exceeds max_level");
  AhlforsTrace out;
  out.alpha = std::numeric_limits<double>::infinity();
  for (int n = window.first; n <= window.last; ++n) {
    const double log_side = std::log(tree.shape().side(n));
    double level_min = std::numeric_limits<double>::infinity();
    for (double m : tree.level(n))
      if (m > 0.0) level_min = std::min(level_min, std::log(m) / log_side);
    if (!std::isfinite(level_min))
      throw std::invalid_argument("ahlfors_index: no positive box at level " + std::to_string(n));
    // log(1)/log(side) is -0.0 for an atom; report it as 0.
    level_min += 0.0;
    out.levels.push_back(n);
    out.level_min.push_back(level_min);
    out.alpha = std::min(out.alpha, level_min);
  }
  return out;
}

double doubling_ratio(const MeasureTree& tree, double a, int level) {
  const auto& shape = tree.shape();
  if (level < 1) throw std::invalid_argument("doubling_ratio: level must be >= 1");
  if (level > tree.max_level()) throw std::invalid_argument("doubling_ratio: level exceeds max_level");
  if (!(a > 1.0) || a > shape.base)
    throw std::invalid_argument("doubling_ratio: enlargement factor must lie in (1, base]");

  const auto b = static_cast<std::int64_t>(shape.base);
  const auto parent_cells = static_cast<std::int64_t>(ipow(shape.base, level - 1));
  const double pad = (a - 1.0) / 2.0;  // in units of the child side length
  const auto masses = tree.level(level);
  double worst = 0.0;

  std::vector<std::int64_t> lo(shape.dim), hi(shape.dim), cur(shape.dim);
  std::vector<std::uint64_t> pcoords(shape.dim);
  for (std::uint64_t i = 0; i < masses.size(); ++i) {
    const double m = masses[i];
    if (!(m > 0.0)) continue;
    const auto coords = BAdicBox(shape.base, shape.dim, level, i).coords();
    for (int ax = 0; ax < shape.dim; ++ax) {
      const double left = static_cast<double>(coords[ax]) - pad;
      const double right = static_cast<double>(coords[ax]) + 1.0 + pad;
      // Parent cells p cover [p*b, (p+1)*b) in child units; keep those with
      // a positive-length overlap.
      auto first = static_cast<std::int64_t>(std::floor(left / static_cast<double>(b)));
      auto last = static_cast<std::int64_t>(std::ceil(right / static_cast<double>(b))) - 1;
      lo[ax] = std::max<std::int64_t>(first, 0);
      hi[ax] = std::min<std::int64_t>(last, parent_cells - 1);
    }
    double neighborhood = 0.0;
    cur = lo;
    while (true) {
      for (int ax = 0; ax < shape.dim; ++ax) pcoords[ax] = static_cast<std::uint64_t>(cur[ax]);
      neighborhood += tree.mass(level - 1, index_from_coords(shape.base, shape.dim, level - 1, pcoords));
      int ax = 0;
      while (ax < shape.dim && ++cur[ax] > hi[ax]) {
        cur[ax] = lo[ax];
        ++ax;
      }
      if (ax == shape.dim) break;
    }
    worst = std::max(worst, neighborhood / m);
  }
  return worst;
}

}  // namespace mixfrac
