#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace mixfrac::kernels {

// Partial sums are formed over fixed-size blocks and merged in block order,
// so the floating-point result does not depend on the thread count.
inline constexpr std::size_t kBlock = 2048;

/// Running log(sum exp(x_i)) and the exp-weighted sum of a companion value
/// y_i, both scaled by exp(-max_x).
struct LogSumExp {
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;       // sum exp(x_i - max)
  double weighted = 0.0;  // sum y_i exp(x_i - max)

  void add(double x, double y = 0.0) {
    if (x <= max) {
      const double e = std::exp(x - max);
      sum += e;
      weighted += y * e;
    } else {
      const double scale = std::exp(max - x);
      sum = sum * scale + 1.0;
      weighted = weighted * scale + y;
      max = x;
    }
  }

  void merge(const LogSumExp& other) {
    if (other.sum == 0.0) return;
    if (sum == 0.0) {
      *this = other;
      return;
    }
    if (other.max <= max) {
      const double s = std::exp(other.max - max);
      sum += other.sum * s;
      weighted += other.weighted * s;
    } else {
      const double s = std::exp(max - other.max);
      sum = sum * s + other.sum;
      weighted = weighted * s + other.weighted;
      max = other.max;
    }
  }

  double log_value() const { return max + std::log(sum); }
  double mean() const { return weighted / sum; }
};

// Deterministic blocked reduction: fn(begin, end) -> Partial per block, run in
// parallel; merge(acc, part) applied serially in block order.
template <class Partial, class BlockFn, class Merge>
Partial reduce_blocks(std::size_t n, Partial init, BlockFn&& fn, Merge&& merge) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  if (blocks <= 1) {
    Partial acc = init;
    if (n > 0) merge(acc, fn(std::size_t{0}, n));
    return acc;
  }
  std::vector<Partial> parts(blocks, init);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(blocks); ++bi) {
    const auto begin = static_cast<std::size_t>(bi) * kBlock;
    parts[bi] = fn(begin, std::min(n, begin + kBlock));
  }
  Partial acc = init;
  for (const auto& p : parts) merge(acc, p);
  return acc;
}

/// log sum_i exp(offset_i + t * slope_i) together with its t-derivative
/// sum_i rho_i slope_i (rho the normalized weights).
struct AffineLse {
  double log_sum;
  double derivative;
};

// Serial reference: two passes (max, then shifted sum), single accumulator.
inline AffineLse affine_lse_serial(std::span<const double> offset, std::span<const double> slope,
                                   double t) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < offset.size(); ++i) mx = std::max(mx, offset[i] + t * slope[i]);
  double sum = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < offset.size(); ++i) {
    const double e = std::exp(offset[i] + t * slope[i] - mx);
    sum += e;
    weighted += e * slope[i];
  }
  return {mx + std::log(sum), weighted / sum};
}

// OpenMP kernel; bit-identical for any thread count.
inline AffineLse affine_lse(std::span<const double> offset, std::span<const double> slope,
                            double t) {
  const auto acc = reduce_blocks(
      offset.size(), LogSumExp{},
      [&](std::size_t begin, std::size_t end) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t i = begin; i < end; ++i) mx = std::max(mx, offset[i] + t * slope[i]);
        LogSumExp part;
        part.max = mx;
        for (std::size_t i = begin; i < end; ++i) {
          const double e = std::exp(offset[i] + t * slope[i] - mx);
          part.sum += e;
          part.weighted += e * slope[i];
        }
        return part;
      },
      [](LogSumExp& a, const LogSumExp& b) { a.merge(b); });
  return {acc.log_value(), acc.mean()};
}

// offset_i = sum_j q_j * columns[j][i]; serial reference and OpenMP variants.
inline void linear_combination_serial(std::span<const std::vector<double>> columns,
                                      std::span<const double> q, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += q[j] * columns[j][i];
}

inline void linear_combination(std::span<const std::vector<double>> columns,
                               std::span<const double> q, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n > static_cast<std::ptrdiff_t>(kBlock))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < columns.size(); ++j) s += q[j] * columns[j][i];
    out[i] = s;
  }
}

}  // namespace mixfrac::kernels
