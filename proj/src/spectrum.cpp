#include "mixfrac/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "mixfrac/kernels.hpp"
#include "mixfrac/root.hpp"

namespace mixfrac {

namespace {

double dot(std::span<const double> a, const QVector& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * q[i];
  return s;
}

std::vector<std::size_t> grid_indices(const QGrid& grid, std::size_t flat) {
  std::vector<std::size_t> idx(grid.k());
  for (std::size_t a = grid.k(); a-- > 0;) {
    const auto n = grid.axes[a].count();
    idx[a] = flat % n;
    flat /= n;
  }
  return idx;
}

// Minimizer of a unimodal g on [lo, hi].
template <class G>
double golden_section(G&& g, double lo, double hi, double tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double gc = g(c), gd = g(d);
  while (hi - lo > tol) {
    if (gc <= gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LegendreResult legendre(const QTable& table, std::span<const double> gamma) {
  const auto points = table.grid.points();
  if (points.empty() || points.size() != table.values.size())
    throw std::invalid_argument("legendre: table values do not match its grid");
  if (gamma.size() != table.grid.k())
    throw std::invalid_argument("legendre: gamma and q differ in length");
  LegendreResult best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = dot(gamma, points[i]) + table.values[i];
    if (v < best.value) best = {v, points[i]};
  }
  return best;
}

LegendreResult legendre(const QTable& table, std::span<const double> gamma,
                        const std::function<double(const QVector&)>& fn) {
  auto best = legendre(table, gamma);
  if (!fn) return best;
  const auto points = table.grid.points();
  const auto flat = static_cast<std::size_t>(
      std::find(points.begin(), points.end(), best.argmin) - points.begin());
  const auto idx = grid_indices(table.grid, flat);
  for (std::size_t a = 0; a < idx.size(); ++a)
    if (idx[a] == 0 || idx[a] + 1 >= table.grid.axes[a].count()) return best;

  std::vector<double> q(best.argmin.values().begin(), best.argmin.values().end());
  const auto objective = [&](const std::vector<double>& x) {
    const QVector qv(x);
    return dot(gamma, qv) + fn(qv);
  };
  for (int sweep = 0; sweep < 4; ++sweep) {
    for (std::size_t a = 0; a < q.size(); ++a) {
      const double h = table.grid.axes[a].step;
      const double centre = best.argmin[a];
      auto trial = q;
      q[a] = golden_section(
          [&](double x) {
            trial[a] = x;
            return objective(trial);
          },
          centre - h, centre + h);
    }
  }
  const double refined = objective(q);
  if (refined < best.value) best = {refined, QVector(q)};
  return best;
}

SpectrumPoint canonical_spectrum(const PartitionEngine& engine, const QVector& q, int level) {
  const double t = engine.solve_t_star(q, level);
  const auto log_rho = engine.log_canonical_weights(q, level, t);
  const auto& lt = engine.terms(level);
  const int k = engine.k();

  // [0]: sum rho ln nu, [1]: sum rho ln rho, [2 + j]: sum rho ln mu_j
  using Acc = std::vector<double>;
  const auto acc = kernels::reduce_blocks(
      log_rho.size(), Acc(2 + k, 0.0),
      [&](std::size_t begin, std::size_t end) {
        Acc part(2 + k, 0.0);
        for (std::size_t i = begin; i < end; ++i) {
          const double rho = std::exp(log_rho[i]);
          part[0] += rho * lt.log_nu[i];
          part[1] += rho * log_rho[i];
          for (int j = 0; j < k; ++j) part[2 + j] += rho * lt.log_mu[j][i];
        }
        return part;
      },
      [](Acc& a, const Acc& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      });
  if (acc[0] == 0.0)
    throw std::domain_error("canonical_spectrum: every gauge mass equals 1 at this level");
  SpectrumPoint out;
  out.value = acc[1] / acc[0];
  for (int j = 0; j < k; ++j) out.gamma.push_back(acc[2 + j] / acc[0]);
  return out;
}

SpectrumPoint canonical_spectrum(const VectorMeasure& xi, const QVector& q, int level) {
  return canonical_spectrum(PartitionEngine(xi), q, level);
}

std::string to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::oracle: return "oracle";
    case SpectrumMethod::legendre: return "legendre";
    case SpectrumMethod::canonical: return "canonical";
    case SpectrumMethod::histogram: return "histogram";
  }
  return "unknown";
}

std::vector<std::vector<double>> box_ratios(const PartitionEngine& engine, int level) {
  const auto& lt = engine.terms(level);
  std::vector<std::vector<double>> out(lt.index.size(), std::vector<double>(engine.k()));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i)
    for (int j = 0; j < engine.k(); ++j) out[i][j] = lt.log_mu[j][i] / lt.log_nu[i];
  for (double l : lt.log_nu)
    if (l == 0.0) throw std::domain_error("ratio undefined: a gauge mass equals 1");
  return out;
}

std::vector<double> default_delta(const PartitionEngine& engine, int level) {
  const auto ratios = box_ratios(engine, level);
  std::vector<double> out(engine.k(), 0.05);
  for (int j = 0; j < engine.k(); ++j) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : ratios) {
      lo = std::min(lo, r[j]);
      hi = std::max(hi, r[j]);
    }
    if (hi > lo) out[j] = 0.05 * (hi - lo);
  }
  return out;
}

double relative_dimension(std::span<const double> log_nu) {
  if (log_nu.empty()) throw std::invalid_argument("relative_dimension: empty box family");
  if (std::all_of(log_nu.begin(), log_nu.end(), [](double l) { return l == 0.0; }))
    throw RootBracketError("relative_dimension: every gauge mass equals 1");
  const std::vector<double> zero(log_nu.size(), 0.0);
  RootOptions opt;
  opt.tol = 1e-12;
  return solve_decreasing([&](double s) { return kernels::affine_lse(zero, log_nu, s); }, opt);
}

double relative_dimension(const VectorMeasure& xi, std::span<const BAdicBox> boxes) {
  std::vector<double> l;
  l.reserve(boxes.size());
  for (const auto& b : boxes) {
    const double m = xi.gauge().mass(b);
    if (!(m > 0.0)) throw std::domain_error("relative_dimension: box with zero gauge mass");
    l.push_back(std::log(m));
  }
  return relative_dimension(l);
}

SpectrumCurve histogram_spectrum(const PartitionEngine& engine, int level,
                                 std::optional<std::vector<double>> delta) {
  if (level < 1) throw std::invalid_argument("histogram_spectrum: level must be >= 1");
  const int k = engine.k();
  const auto widths = delta ? *delta : default_delta(engine, level);
  if (static_cast<int>(widths.size()) != k)
    throw std::invalid_argument("histogram_spectrum: need one bin width per measure");
  for (double d : widths)
    if (!(d > 0.0)) throw std::invalid_argument("histogram_spectrum: bin width must be > 0");

  const auto ratios = box_ratios(engine, level);
  const auto& lt = engine.terms(level);
  struct Bin {
    std::vector<double> gamma_sum;
    std::vector<double> log_nu;
  };
  std::map<std::vector<long long>, Bin> bins;
  std::vector<long long> key(k);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    for (int j = 0; j < k; ++j) key[j] = static_cast<long long>(std::floor(ratios[i][j] / widths[j]));
    auto& bin = bins[key];
    if (bin.gamma_sum.empty()) bin.gamma_sum.assign(k, 0.0);
    for (int j = 0; j < k; ++j) bin.gamma_sum[j] += ratios[i][j];
    bin.log_nu.push_back(lt.log_nu[i]);
  }

  SpectrumCurve curve;
  curve.method = SpectrumMethod::histogram;
  curve.level = level;
  curve.delta = widths;
  for (auto& [_, bin] : bins) {
    SpectrumPoint p;
    p.boxes = bin.log_nu.size();
    for (double g : bin.gamma_sum) p.gamma.push_back(g / static_cast<double>(p.boxes));
    p.value = relative_dimension(bin.log_nu);
    curve.samples.push_back(std::move(p));
  }
  return curve;
}

SpectrumCurve histogram_spectrum(const VectorMeasure& xi, int level,
                                 std::optional<std::vector<double>> delta) {
  return histogram_spectrum(PartitionEngine(xi), level, std::move(delta));
}

LocalDim local_dimension(const VectorMeasure& xi, std::span<const int> path, LevelWindow window) {
  if (window.first < 1 || window.last < window.first)
    throw std::invalid_argument("local_dimension: window must satisfy 1 <= first <= last");
  if (static_cast<int>(path.size()) < window.last)
    throw std::invalid_argument("local_dimension: path shorter than the window");
  if (window.last > xi.shape().max_level)
    throw std::invalid_argument("local_dimension: window exceeds max_level");
  const auto& shape = xi.shape();
  LocalDim out;
  out.path.assign(path.begin(), path.begin() + window.last);
  out.upper.assign(xi.k(), -std::numeric_limits<double>::infinity());
  out.lower.assign(xi.k(), std::numeric_limits<double>::infinity());
  for (int n = window.first; n <= window.last; ++n) {
    const auto box = BAdicBox::from_path(shape.base, shape.dim, path.subspan(0, n));
    const double nu = xi.gauge().mass(box);
    if (!(nu > 0.0) || nu >= 1.0)
      throw std::domain_error("local_dimension: gauge mass outside (0,1) at level " +
                              std::to_string(n));
    std::vector<double> r(xi.k());
    for (int j = 0; j < xi.k(); ++j) {
      const double m = xi.analyzed(j).mass(box);
      if (!(m > 0.0))
        throw std::domain_error("local_dimension: zero mass on the path at level " +
                                std::to_string(n));
      r[j] = std::log(m) / std::log(nu);
      out.upper[j] = std::max(out.upper[j], r[j]);
      out.lower[j] = std::min(out.lower[j], r[j]);
    }
    out.levels.push_back(n);
    out.ratios.push_back(std::move(r));
  }
  return out;
}

std::vector<BAdicBox> classify_boxes(const VectorMeasure& xi, std::span<const double> gamma,
                                     std::span<const double> delta, int level) {
  if (static_cast<int>(gamma.size()) != xi.k() || static_cast<int>(delta.size()) != xi.k())
    throw std::invalid_argument("classify_boxes: gamma and delta need one entry per measure");
  for (double d : delta)
    if (!(d > 0.0)) throw std::invalid_argument("classify_boxes: delta must be > 0");
  const auto& shape = xi.shape();
  const auto cells = shape.cells_at(level);
  std::vector<BAdicBox> out;
  for (std::uint64_t i = 0; i < cells; ++i) {
    if (!xi.in_joint_support(level, i)) continue;
    const double log_nu = std::log(xi.gauge().mass(level, i));
    if (log_nu == 0.0) continue;
    bool inside = true;
    for (int j = 0; j < xi.k() && inside; ++j) {
      const double r = std::log(xi.analyzed(j).mass(level, i)) / log_nu;
      inside = std::abs(r - gamma[j]) <= delta[j];
    }
    if (inside) out.emplace_back(shape.base, shape.dim, level, i);
  }
  return out;
}

}  // namespace mixfrac
