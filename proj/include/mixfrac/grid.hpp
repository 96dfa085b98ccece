#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mixfrac {

// Parameters shared by every tree on a b-adic grid over [0,1]^d.
struct GridShape {
  int base = 2;
  int dim = 1;
  int max_level = 0;

  // Number of children of a box: base^dim.
  std::uint64_t branching() const;
  std::uint64_t cells_at(int level) const;
  // Side length base^(-level) of a box at the given level.
  double side(int level) const;

  void validate() const;
  bool operator==(const GridShape&) const = default;
};

// Inclusive range of grid levels.
struct LevelWindow {
  int first = 0;
  int last = 0;

  int size() const { return last - first + 1; }
  bool contains(int level) const { return level >= first && level <= last; }
  bool operator==(const LevelWindow&) const = default;
};

// Top half of the available levels, widened to at least three levels when
// the tree is shallow.
LevelWindow default_window(int max_level);

/// A cell of the base-b subdivision of [0,1]^d.
///
/// A box at level n is addressed by n combined digits, each in
/// [0, base^dim). Combined digit c encodes one base-b digit per axis:
/// c = sum_axis digit_axis * base^axis. The box index is the path read as a
/// number in radix base^dim, most significant digit first, so the children
/// of box i are i * base^dim + c and every subtree is a contiguous index
/// range at any deeper level.
class BAdicBox {
 public:
  BAdicBox(int base, int dim, int level, std::uint64_t index);

  static BAdicBox root(int base, int dim) { return {base, dim, 0, 0}; }
  static BAdicBox from_path(int base, int dim, std::span<const int> path);
  // The level-`level` box containing point x (coordinates in [0,1]; 1.0 maps
  // into the last cell).
  static BAdicBox containing(int base, int level, std::span<const double> x);

  int base() const { return base_; }
  int dim() const { return dim_; }
  int level() const { return level_; }
  std::uint64_t index() const { return index_; }

  std::vector<int> path() const;
  // Integer offset of the box along each axis, in units of side().
  std::vector<std::uint64_t> coords() const;
  double side() const;
  double diameter() const;

  std::vector<BAdicBox> children() const;
  BAdicBox parent() const;
  bool contains(const BAdicBox& other) const;
  // Index range [begin, end) of the boxes below this one at a deeper level.
  std::pair<std::uint64_t, std::uint64_t> descendants_at(int level) const;

  bool operator==(const BAdicBox&) const = default;

 private:
  int base_;
  int dim_;
  int level_;
  std::uint64_t index_;
};

// Box index at `level` for per-axis integer offsets.
std::uint64_t index_from_coords(int base, int dim, int level,
                                std::span<const std::uint64_t> coords);

std::uint64_t ipow(std::uint64_t base, int exponent);

}  // namespace mixfrac
