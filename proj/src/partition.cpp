#include "mixfrac/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mixfrac/kernels.hpp"

namespace mixfrac {

void QVector::check() const {
  for (double v : q_)
    if (!std::isfinite(v)) throw std::invalid_argument("q entries must be finite");
}

QVector QVector::unit(int k, int i) {
  std::vector<double> q(k, 0.0);
  q.at(i) = 1.0;
  return QVector(std::move(q));
}

double QVector::sum() const { return std::accumulate(q_.begin(), q_.end(), 0.0); }

QVector mix(const QVector& p, const QVector& q, double alpha) {
  if (p.size() != q.size()) throw std::invalid_argument("mix: q vectors differ in length");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * p[i] + (1.0 - alpha) * q[i];
  return QVector(std::move(out));
}

PartitionEngine::PartitionEngine(const VectorMeasure& xi, RootOptions root)
    : k_(xi.k()), shape_(xi.shape()), root_(root) {
  levels_.resize(shape_.max_level + 1);
  for (int n = 0; n <= shape_.max_level; ++n) {
    auto& lt = levels_[n];
    lt.log_mu.resize(k_);
    const auto cells = shape_.cells_at(n);
    for (std::uint64_t i = 0; i < cells; ++i) {
      if (!xi.in_joint_support(n, i)) continue;
      lt.index.push_back(i);
      lt.log_nu.push_back(std::log(xi.gauge().mass(n, i)));
      for (int j = 0; j < k_; ++j) lt.log_mu[j].push_back(std::log(xi.analyzed(j).mass(n, i)));
    }
  }
}

const LevelTerms& PartitionEngine::terms(int level) const {
  if (level < 0 || level > shape_.max_level)
    throw std::out_of_range("level " + std::to_string(level) + " outside [0, max_level]");
  return levels_[level];
}

PartitionEngine::Slice PartitionEngine::slice(int level,
                                              const std::optional<BAdicBox>& region) const {
  const auto& lt = terms(level);
  Slice s{0, lt.index.size()};
  if (region) {
    if (region->base() != shape_.base || region->dim() != shape_.dim)
      throw std::invalid_argument("region box does not belong to this grid");
    const auto [lo, hi] = region->descendants_at(level);
    s.begin = static_cast<std::size_t>(
        std::lower_bound(lt.index.begin(), lt.index.end(), lo) - lt.index.begin());
    s.end = static_cast<std::size_t>(
        std::lower_bound(lt.index.begin(), lt.index.end(), hi) - lt.index.begin());
  }
  if (s.begin == s.end)
    throw std::domain_error("empty joint support at level " + std::to_string(level));
  return s;
}

std::vector<double> PartitionEngine::offsets(const QVector& q, int level, Slice s) const {
  if (static_cast<int>(q.size()) != k_)
    throw std::invalid_argument("q has " + std::to_string(q.size()) + " entries, expected " +
                                std::to_string(k_));
  const auto& lt = terms(level);
  std::vector<std::vector<double>> cols(k_);
  std::vector<double> out(s.end - s.begin);
  if (s.begin == 0 && s.end == lt.index.size()) {
    kernels::linear_combination(lt.log_mu, q.values(), out);
  } else {
    for (int j = 0; j < k_; ++j)
      cols[j].assign(lt.log_mu[j].begin() + s.begin, lt.log_mu[j].begin() + s.end);
    kernels::linear_combination(cols, q.values(), out);
  }
  return out;
}

double PartitionEngine::log_partition_sum(const QVector& q, double t, int level,
                                          const std::optional<BAdicBox>& region) const {
  const auto s = slice(level, region);
  const auto a = offsets(q, level, s);
  std::span<const double> l(terms(level).log_nu.data() + s.begin, s.end - s.begin);
  return kernels::affine_lse(a, l, t).log_sum;
}

double PartitionEngine::solve_t_star(const QVector& q, int level,
                                     const std::optional<BAdicBox>& region) const {
  const auto s = slice(level, region);
  const auto a = offsets(q, level, s);
  std::span<const double> l(terms(level).log_nu.data() + s.begin, s.end - s.begin);
  if (std::all_of(l.begin(), l.end(), [](double v) { return v == 0.0; }))
    throw RootBracketError("every gauge mass equals 1 at level " + std::to_string(level) +
                           ": the partition sum is constant in t");
  return solve_decreasing([&](double t) { return kernels::affine_lse(a, l, t); }, root_);
}

DimensionEstimate PartitionEngine::estimate(const QVector& q, LevelWindow window) const {
  if (window.first < 1 || window.last > shape_.max_level || window.size() < 3)
    throw std::invalid_argument("fit window must hold >= 3 levels within [1, max_level]");
  DimensionEstimate est;
  est.q = q;
  est.window = window;
  for (int n = window.first; n <= window.last; ++n) {
    est.levels.push_back(n);
    est.t_star.push_back(solve_t_star(q, n));
  }
  est.b_hat = *std::min_element(est.t_star.begin(), est.t_star.end());
  est.Lambda_hat = *std::max_element(est.t_star.begin(), est.t_star.end());
  // No finite-level cover regularization is available, so B takes the upper
  // envelope; this keeps b <= B <= Lambda by construction.
  est.B_hat = est.Lambda_hat;

  const double m = static_cast<double>(est.levels.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < est.levels.size(); ++i) {
    const double x = est.levels[i];
    const double y = x * est.t_star[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  est.intercept = (sy - est.slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < est.levels.size(); ++i) {
    const double r = est.t_star[i] - (est.slope + est.intercept / est.levels[i]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / m);
  return est;
}

std::vector<double> PartitionEngine::log_canonical_weights(const QVector& q, int level,
                                                           double t_star) const {
  const auto s = slice(level, std::nullopt);
  auto a = offsets(q, level, s);
  const auto& l = terms(level).log_nu;
  const double norm = kernels::affine_lse(a, l, t_star).log_sum;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += t_star * l[i] - norm;
  return a;
}

double PartitionEngine::log_max_gauge(int level) const {
  const auto& l = terms(level).log_nu;
  if (l.empty()) throw std::domain_error("empty joint support at level " + std::to_string(level));
  return *std::max_element(l.begin(), l.end());
}

double log_partition_sum(const VectorMeasure& xi, const QVector& q, double t, int level) {
  return PartitionEngine(xi).log_partition_sum(q, t, level);
}

double solve_t_star(const VectorMeasure& xi, const QVector& q, int level) {
  return PartitionEngine(xi).solve_t_star(q, level);
}

DimensionEstimate estimate_dimensions(const VectorMeasure& xi, const QVector& q,
                                      LevelWindow window) {
  return PartitionEngine(xi).estimate(q, window);
}

std::vector<SurfaceRow> qgrid_surface(const PartitionEngine& engine, std::span<const QVector> qgrid,
                                      LevelWindow window) {
  if (qgrid.empty()) throw std::invalid_argument("qgrid_surface: empty q-grid");
  std::vector<SurfaceRow> rows(qgrid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(qgrid.size()); ++i) {
    rows[i].q = qgrid[i];
    try {
      rows[i].estimate = engine.estimate(qgrid[i], window);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  }
  return rows;
}

std::vector<SurfaceRow> qgrid_surface(const VectorMeasure& xi, std::span<const QVector> qgrid,
                                      LevelWindow window) {
  return qgrid_surface(PartitionEngine(xi), qgrid, window);
}

std::size_t GridAxis::count() const {
  if (!(step > 0.0) || !(max >= min)) return 0;
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::size_t QGrid::size() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count();
  return n;
}

void QGrid::validate() const {
  if (axes.empty()) throw std::invalid_argument("q-grid has no axes");
  for (const auto& a : axes) {
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || !std::isfinite(a.step))
      throw std::invalid_argument("q-grid bounds must be finite");
    if (!(a.step > 0.0)) throw std::invalid_argument("q-grid step must be > 0");
    if (a.max < a.min) throw std::invalid_argument("q-grid max must be >= min");
  }
}

std::vector<QVector> QGrid::points() const {
  validate();
  std::vector<QVector> out;
  out.reserve(size());
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<double> q(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) q[a] = axes[a].at(idx[a]);
    out.emplace_back(std::move(q));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].count()) break;
      idx[a] = 0;
      if (a == 0) return out;
    }
  }
}

}  // namespace mixfrac
