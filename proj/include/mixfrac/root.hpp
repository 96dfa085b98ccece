#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mixfrac {

// Raised when a decreasing function cannot be bracketed (e.g. a partition
// sum that is constant in t because every gauge mass equals 1).
class RootBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootOptions {
  double lo = -64.0;
  double hi = 64.0;
  double tol = 1e-10;
  int max_doublings = 24;
  int polish_steps = 3;
};

/// Root of a strictly decreasing function. `eval(t)` returns a pair-like
/// object with members `log_sum` (the function value) and `derivative`.
///
/// The bracket [lo, hi] is doubled outward until the sign change is
/// captured, bisected to width tol, then refined by Newton steps that are
/// only accepted while they stay inside the final bracket.
template <class Eval>
double solve_decreasing(Eval&& eval, const RootOptions& opt = {}) {
  double lo = opt.lo, hi = opt.hi;
  auto flo = eval(lo).log_sum;
  auto fhi = eval(hi).log_sum;
  if (flo == fhi && flo != 0.0)
    throw RootBracketError("function is constant in t (value " + std::to_string(flo) +
                           "); no root can be bracketed");
  for (int i = 0; i < opt.max_doublings && flo < 0.0; ++i) flo = eval(lo *= 2.0).log_sum;
  for (int i = 0; i < opt.max_doublings && fhi > 0.0; ++i) fhi = eval(hi *= 2.0).log_sum;
  if (!(flo >= 0.0) || !(fhi <= 0.0))
    throw RootBracketError("root not bracketed in [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]; the function is not decreasing through 0");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    const double f = eval(mid).log_sum;
    if (f == 0.0) return mid;
    (f > 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < opt.polish_steps; ++i) {
    const auto v = eval(x);
    if (v.log_sum == 0.0 || !(v.derivative < 0.0)) break;
    const double next = x - v.log_sum / v.derivative;
    if (!(next >= lo && next <= hi) || next == x) break;
    x = next;
  }
  return x;
}

}  // namespace mixfrac
