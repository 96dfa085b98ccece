#pragma once

#include <vector>

#include "mixfrac/measure.hpp"
#include "mixfrac/partition.hpp"

namespace mixfrac {

// Closed forms for multiplicative cascades. With transfer sum
//   Phi(q,t) = sum_j prod_i p_{i,j}^{q_i} w_j^t
// the level-n partition sum factorizes as S_n(q,t) = Phi(q,t)^n, so the root
// of Phi(q,B) = 1 is the exact critical exponent at every level.

// Branches where some weight is zero lie outside the joint support and are
// skipped; a zero weight raised to a negative exponent is rejected.
double phi(const QVector& q, double t, const CascadeSpec& spec);
double log_phi(const QVector& q, double t, const CascadeSpec& spec);

double solve_B(const QVector& q, const CascadeSpec& spec);

// Implicit differentiation of Phi(q, B(q)) = 1:
//   dB/dq_i = -(sum_j rho_j ln p_{i,j}) / (sum_j rho_j ln w_j),
//   rho_j = prod_i p_{i,j}^{q_i} w_j^{B(q)}.
std::vector<double> grad_B(const QVector& q, const CascadeSpec& spec);

struct SpectrumPoint {
  std::vector<double> gamma;
  double value = 0.0;
  std::size_t boxes = 0;  // histogram bins only
};

struct OracleResult {
  QVector q;
  double B = 0.0;
  std::vector<double> gradB;
  std::vector<double> gamma;  // -gradB
  double f = 0.0;             // <gamma, q> + B
};

OracleResult oracle_point(const QVector& q, const CascadeSpec& spec);
SpectrumPoint oracle_spectrum(const QVector& q, const CascadeSpec& spec);

struct SpectralBounds {
  std::vector<double> gamma_min;
  std::vector<double> gamma_max;
};

// Per analyzed measure j: extreme branch ratios ln p_{j,i} / ln w_i, the
// limits of -dB/dq_j as q_j -> +inf and -inf.
SpectralBounds spectral_bounds(const CascadeSpec& spec);

}  // namespace mixfrac
