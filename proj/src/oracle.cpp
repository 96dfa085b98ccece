#include "mixfrac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixfrac/kernels.hpp"
#include "mixfrac/root.hpp"

namespace mixfrac {

namespace {

struct Branch {
  std::vector<double> log_p;  // one per analyzed measure
  double log_w;
};

// Branches inside the joint support (all k+1 weights positive).
std::vector<Branch> branches(const QVector& q, const CascadeSpec& spec) {
  if (static_cast<int>(q.size()) != spec.k())
    throw std::invalid_argument("q has " + std::to_string(q.size()) + " entries, expected " +
                                std::to_string(spec.k()));
  std::vector<Branch> out;
  const auto nb = spec.gauge().size();
  for (std::size_t j = 0; j < nb; ++j) {
    bool positive = spec.gauge()[j] > 0.0;
    for (int i = 0; i < spec.k(); ++i) {
      const double p = spec.analyzed(i)[j];
      if (p == 0.0 && q[i] < 0.0)
        throw std::domain_error("zero weight raised to a negative exponent");
      positive = positive && p > 0.0;
    }
    if (!positive) continue;
    Branch b;
    b.log_w = std::log(spec.gauge()[j]);
    for (int i = 0; i < spec.k(); ++i) b.log_p.push_back(std::log(spec.analyzed(i)[j]));
    out.push_back(std::move(b));
  }
  if (out.empty()) throw std::domain_error("cascade has an empty joint support");
  return out;
}

double dot(const QVector& q, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += q[i] * v[i];
  return s;
}

kernels::AffineLse log_phi_with_slope(const std::vector<Branch>& bs, const QVector& q, double t) {
  kernels::LogSumExp acc;
  for (const auto& b : bs) acc.add(dot(q, b.log_p) + t * b.log_w, b.log_w);
  return {acc.log_value(), acc.mean()};
}

}  // namespace

double log_phi(const QVector& q, double t, const CascadeSpec& spec) {
  return log_phi_with_slope(branches(q, spec), q, t).log_sum;
}

double phi(const QVector& q, double t, const CascadeSpec& spec) {
  return std::exp(log_phi(q, t, spec));
}

double solve_B(const QVector& q, const CascadeSpec& spec) {
  const auto bs = branches(q, spec);
  RootOptions opt;
  opt.tol = 1e-12;
  return solve_decreasing([&](double t) { return log_phi_with_slope(bs, q, t); }, opt);
}

std::vector<double> grad_B(const QVector& q, const CascadeSpec& spec) {
  const auto bs = branches(q, spec);
  const double B = solve_B(q, spec);
  std::vector<double> terms(bs.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < bs.size(); ++j) {
    terms[j] = dot(q, bs[j].log_p) + B * bs[j].log_w;
    mx = std::max(mx, terms[j]);
  }
  double den = 0.0;
  std::vector<double> num(q.size(), 0.0);
  for (std::size_t j = 0; j < bs.size(); ++j) {
    const double rho = std::exp(terms[j] - mx);
    den += rho * bs[j].log_w;
    for (std::size_t i = 0; i < q.size(); ++i) num[i] += rho * bs[j].log_p[i];
  }
  for (auto& v : num) v = -v / den;
  return num;
}

OracleResult oracle_point(const QVector& q, const CascadeSpec& spec) {
  OracleResult r;
  r.q = q;
  r.B = solve_B(q, spec);
  r.gradB = grad_B(q, spec);
  r.gamma.resize(r.gradB.size());
  for (std::size_t i = 0; i < r.gamma.size(); ++i) r.gamma[i] = -r.gradB[i];
  r.f = dot(q, r.gamma) + r.B;
  return r;
}

SpectrumPoint oracle_spectrum(const QVector& q, const CascadeSpec& spec) {
  auto r = oracle_point(q, spec);
  return {std::move(r.gamma), r.f, 0};
}

SpectralBounds spectral_bounds(const CascadeSpec& spec) {
  spec.validate();
  SpectralBounds out;
  for (int i = 0; i < spec.k(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < spec.gauge().size(); ++j) {
      const double p = spec.analyzed(i)[j], w = spec.gauge()[j];
      if (!(p > 0.0) || !(w > 0.0)) continue;
      const double ratio = std::log(p) / std::log(w);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    out.gamma_min.push_back(lo);
    out.gamma_max.push_back(hi);
  }
  return out;
}

}  // namespace mixfrac
