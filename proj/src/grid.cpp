#include "mixfrac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mixfrac {

std::uint64_t ipow(std::uint64_t base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("ipow: negative exponent");
  std::uint64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("grid too large: base^level overflows 64 bits");
    r *= base;
  }
  return r;
}

std::uint64_t GridShape::branching() const {
  return ipow(static_cast<std::uint64_t>(base), dim);
}

std::uint64_t GridShape::cells_at(int level) const {
  return ipow(branching(), level);
}

double GridShape::side(int level) const {
  return std::pow(static_cast<double>(base), -level);
}

void GridShape::validate() const {
  if (base < 2) throw std::invalid_argument("grid base must be >= 2");
  if (dim < 1) throw std::invalid_argument("grid dimension must be >= 1");
  if (max_level < 0) throw std::invalid_argument("max_level must be >= 0");
  (void)cells_at(max_level);
}

LevelWindow default_window(int max_level) {
  const int span = std::max(max_level / 2, 3);
  const int first = std::max(1, max_level - span + 1);
  return {first, max_level};
}

BAdicBox::BAdicBox(int base, int dim, int level, std::uint64_t index)
    : base_(base), dim_(dim), level_(level), index_(index) {
  if (base < 2) throw std::invalid_argument("box base must be >= 2");
  if (dim < 1) throw std::invalid_argument("box dimension must be >= 1");
  if (level < 0) throw std::invalid_argument("box level must be >= 0");
  const auto cells = ipow(ipow(base, dim), level);
  if (index >= cells)
    throw std::out_of_range("box index " + std::to_string(index) +
                            " out of range at level " + std::to_string(level));
}

BAdicBox BAdicBox::from_path(int base, int dim, std::span<const int> path) {
  const auto b = ipow(base, dim);
  std::uint64_t index = 0;
  for (int digit : path) {
    if (digit < 0 || static_cast<std::uint64_t>(digit) >= b)
      throw std::invalid_argument("path digit " + std::to_string(digit) +
                                  " outside [0, base^dim)");
    index = index * b + static_cast<std::uint64_t>(digit);
  }
  return {base, dim, static_cast<int>(path.size()), index};
}

BAdicBox BAdicBox::containing(int base, int level, std::span<const double> x) {
  const int dim = static_cast<int>(x.size());
  const auto n = ipow(base, level);
  std::vector<std::uint64_t> coords(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (!(x[a] >= 0.0 && x[a] <= 1.0))
      throw std::invalid_argument("coordinate outside [0,1]");
    auto c = static_cast<std::uint64_t>(std::floor(x[a] * static_cast<double>(n)));
    coords[a] = std::min(c, n - 1);
  }
  return {base, dim, level, index_from_coords(base, dim, level, coords)};
}

std::uint64_t index_from_coords(int base, int dim, int level,
                                std::span<const std::uint64_t> coords) {
  const auto b = static_cast<std::uint64_t>(base);
  const auto branching = ipow(b, dim);
  std::uint64_t index = 0;
  for (int i = level - 1; i >= 0; --i) {
    const auto scale = ipow(b, i);
    std::uint64_t digit = 0;
    for (int a = dim - 1; a >= 0; --a) digit = digit * b + (coords[a] / scale) % b;
    index = index * branching + digit;
  }
  return index;
}

std::vector<int> BAdicBox::path() const {
  const auto b = ipow(base_, dim_);
  std::vector<int> digits(level_);
  auto idx = index_;
  for (int i = level_ - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(idx % b);
    idx /= b;
  }
  return digits;
}

std::vector<std::uint64_t> BAdicBox::coords() const {
  std::vector<std::uint64_t> out(dim_, 0);
  const auto b = static_cast<std::uint64_t>(base_);
  for (int digit : path()) {
    auto c = static_cast<std::uint64_t>(digit);
    for (int a = 0; a < dim_; ++a) {
      out[a] = out[a] * b + c % b;
      c /= b;
    }
  }
  return out;
}

double BAdicBox::side() const { return std::pow(static_cast<double>(base_), -level_); }

double BAdicBox::diameter() const { return side() * std::sqrt(static_cast<double>(dim_)); }

std::vector<BAdicBox> BAdicBox::children() const {
  const auto b = ipow(base_, dim_);
  std::vector<BAdicBox> out;
  out.reserve(b);
  for (std::uint64_t c = 0; c < b; ++c) out.emplace_back(base_, dim_, level_ + 1, index_ * b + c);
  return out;
}

BAdicBox BAdicBox::parent() const {
  if (level_ == 0) throw std::logic_error("root box has no parent");
  return {base_, dim_, level_ - 1, index_ / ipow(base_, dim_)};
}

bool BAdicBox::contains(const BAdicBox& other) const {
  if (other.base_ != base_ || other.dim_ != dim_ || other.level_ < level_) return false;
  return other.index_ / ipow(ipow(base_, dim_), other.level_ - level_) == index_;
}

std::pair<std::uint64_t, std::uint64_t> BAdicBox::descendants_at(int level) const {
  if (level < level_) throw std::invalid_argument("descendants_at: level above box");
  const auto span = ipow(ipow(base_, dim_), level - level_);
  return {index_ * span, (index_ + 1) * span};
}

}  // namespace mixfrac
