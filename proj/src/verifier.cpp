#include "mixfrac/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "mixfrac/format.hpp"
#include "mixfrac/oracle.hpp"
#include "mixfrac/spectrum.hpp"

namespace mixfrac {

namespace {

constexpr std::size_t kMaxListed = 8;

// Accumulates the worst slack of one check and a bounded list of violations.
class Tally {
 public:
  Tally(std::string id, std::string anchor, double tol) {
    check_.id = std::move(id);
    check_.anchor = std::move(anchor);
    check_.tolerance = tol;
  }

  void expect(double slack, const std::string& what) {
    ++check_.assertions;
    if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
    worst_ = std::min(worst_, slack);
    if (slack < -check_.tolerance) {
      ++violations_;
      if (listed_ < kMaxListed) {
        check_.notes.push_back("violation: " + what + " (slack " + format_number(slack) + ")");
        ++listed_;
      }
    }
  }

  void note(std::string s) { check_.notes.push_back(std::move(s)); }
  std::size_t violations() const { return violations_; }

  PropertyCheck finish() {
    if (check_.assertions == 0) {
      check_.status = CheckStatus::not_applicable;
      check_.margin = 0.0;
    } else {
      check_.margin = worst_;
      check_.status = worst_ >= -check_.tolerance ? CheckStatus::pass : CheckStatus::fail;
      if (violations_ > listed_)
        check_.notes.push_back(std::to_string(violations_ - listed_) + " further violations not listed");
    }
    return check_;
  }

 private:
  PropertyCheck check_;
  double worst_ = std::numeric_limits<double>::infinity();
  std::size_t violations_ = 0;
  std::size_t listed_ = 0;
};

std::string label(std::size_t spec_index, const QVector& q) {
  return "spec " + std::to_string(spec_index + 1) + " q=" + format_vector(q.values());
}

const DimensionEstimate* estimate_or_null(const SurfaceRow& row) {
  return row.estimate ? &*row.estimate : nullptr;
}

bool all_of_q(const QVector& q, auto pred) {
  return std::all_of(q.values().begin(), q.values().end(), pred);
}

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// Flat grid index shifted by `delta` steps along each axis, or npos.
std::size_t shifted(const QGrid& grid, std::size_t flat, std::span<const int> delta) {
  std::vector<std::size_t> idx(grid.k());
  auto rest = flat;
  for (std::size_t a = grid.k(); a-- > 0;) {
    idx[a] = rest % grid.axes[a].count();
    rest /= grid.axes[a].count();
  }
  std::size_t out = 0;
  for (std::size_t a = 0; a < grid.k(); ++a) {
    const auto n = static_cast<long long>(grid.axes[a].count());
    const auto v = static_cast<long long>(idx[a]) + delta[a];
    if (v < 0 || v >= n) return static_cast<std::size_t>(-1);
    out = out * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  }
  return out;
}

// Directions for midpoint convexity: unit axes plus, for k >= 2, the
// diagonal and anti-diagonal of the first two coordinates.
std::vector<std::vector<int>> convexity_directions(std::size_t k) {
  std::vector<std::vector<int>> dirs;
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<int> d(k, 0);
    d[a] = 1;
    dirs.push_back(d);
  }
  if (k >= 2) {
    std::vector<int> d(k, 0);
    d[0] = 1;
    d[1] = 1;
    dirs.push_back(d);
    d[1] = -1;
    dirs.push_back(d);
  }
  return dirs;
}

std::vector<int> negate(std::vector<int> d) {
  for (auto& v : d) v = -v;
  return d;
}

CascadeSpec uniform_like(const CascadeSpec& s) {
  CascadeSpec u = s;
  const auto b = s.shape().branching();
  for (auto& w : u.weights) w.assign(b, 1.0 / static_cast<double>(b));
  u.degenerate = false;
  return u;
}

std::vector<QVector> product_points(const std::vector<double>& values, int k) {
  std::vector<QVector> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<double> q(k);
    for (int a = 0; a < k; ++a) q[a] = values[idx[a]];
    out.emplace_back(std::move(q));
    int a = k - 1;
    while (a >= 0 && ++idx[a] == values.size()) idx[a--] = 0;
    if (a < 0) return out;
  }
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::unverified: return "unverified";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

void VerifyConfig::validate() const {
  if (specs.empty()) throw std::invalid_argument("verify config names no cascade spec");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      specs[i].validate();
    } catch (const std::exception& e) {
      throw std::invalid_argument("spec " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  QGrid{{q_axis}}.validate();
  if (engine_window.first < 1 || engine_window.size() < 3)
    throw std::invalid_argument("engine window must hold >= 3 levels starting at level >= 1");
  if (spectrum_level < 1) throw std::invalid_argument("spectrum level must be >= 1");
  if (formalism_levels.empty() || formalism_q.empty())
    throw std::invalid_argument("formalism levels and q values must be non-empty");
  for (int l : formalism_levels)
    if (l < 1) throw std::invalid_argument("formalism levels must be >= 1");
  if (random_triples < 0) throw std::invalid_argument("random_triples must be >= 0");
  if (!(lp_exponent > 1.0)) throw std::invalid_argument("lp_exponent must be > 1");
  if (!seed) throw std::invalid_argument("verify config needs a seed");
}

VerifyConfig default_verify_config() {
  VerifyConfig cfg;
  cfg.specs = {
      {2, 1, 16, {{0.25, 0.75}, {0.5, 0.5}}, false},
      {2, 1, 16, {{0.25, 0.75}, {0.7, 0.3}, {0.5, 0.5}}, false},
      {2, 1, 16, {{0.7, 0.3}, {0.6, 0.4}}, false},
  };
  cfg.seed = 20240917;
  return cfg;
}

namespace {

CascadeSpec deep_enough(CascadeSpec s, const VerifyConfig& cfg) {
  int depth = std::max(cfg.engine_window.last, cfg.spectrum_level);
  for (int l : cfg.formalism_levels) depth = std::max(depth, l);
  s.levels = depth;
  return s;
}

}  // namespace

SpecContext::SpecContext(const CascadeSpec& s, const VerifyConfig& cfg)
    : spec(deep_enough(s, cfg)),
      xi(build_cascade(spec)),
      engine(xi),
      qgrid{std::vector<GridAxis>(spec.k(), cfg.q_axis)},
      points(qgrid.points()) {
  oracle_B.reserve(points.size());
  for (const auto& q : points) oracle_B.push_back(solve_B(q, spec));
  rows = qgrid_surface(engine, points, cfg.engine_window);
}

PropertyCheck check_regularity_index(std::span<const SpecContext> ctx, const VerifyConfig&) {
  Tally t("quasi-ahlfors-index",
          "nu quasi-Ahlfors with index alpha > 0: limsup nu(U)/|U|^alpha < inf; on a cascade "
          "alpha = -log_b(max w) at every level",
          1e-9);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    const auto w = c.spec.gauge();
    const double expected =
        -std::log(*std::max_element(w.begin(), w.end())) / std::log(static_cast<double>(c.spec.base));
    const auto trace = ahlfors_index(c.xi.gauge(), {1, c.spec.levels});
    for (std::size_t i = 0; i < trace.levels.size(); ++i)
      t.expect(-std::abs(trace.level_min[i] - expected),
               "spec " + std::to_string(s + 1) + " level " + std::to_string(trace.levels[i]));
    t.expect(trace.alpha, "spec " + std::to_string(s + 1) + " alpha > 0");
    t.note("spec " + std::to_string(s + 1) + ": alpha = " + format_number(trace.alpha));
  }
  return t.finish();
}

PropertyCheck check_set_functions(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("set-monotone-stable",
          "E1 subset E2 => dim(E1) <= dim(E2); dim(E1 u ... u EN) = max dim(Ei) (finite-level "
          "surrogate: max t*(Ei) <= t*(union) <= max t*(Ei) + ln N / -ln max nu)",
          1e-9);
  const int level = cfg.engine_window.last;
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    const auto root = BAdicBox::root(c.spec.base, c.spec.dim);
    const auto parts = root.children();
    const double slack_bound =
        std::log(static_cast<double>(parts.size())) / -c.engine.log_max_gauge(level);
    for (const auto& q : c.points) {
      const double whole = c.engine.solve_t_star(q, level);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& part : parts) {
        const double v = c.engine.solve_t_star(q, level, part);
        t.expect(whole - v, label(s, q) + " subset " + std::to_string(part.index()));
        best = std::max(best, v);
      }
      t.expect(whole - best, label(s, q) + " union >= max");
      t.expect(best + slack_bound - whole, label(s, q) + " union <= max + ln N / -ln nu_max");
    }
  }
  t.note("finite unions only: E = whole support, Ei = first-level subtrees, level " +
         std::to_string(level));
  return t.finish();
}

PropertyCheck check_convexity_monotonicity(std::span<const SpecContext> ctx, const VerifyConfig&) {
  Tally t("convexity-monotonicity",
          "q -> B(q) and q -> Lambda(q) convex; q_i -> b(q), B(q), Lambda(q) non-increasing", 1e-9);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    std::vector<double> engine_L(c.points.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> engine_b(c.points.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < c.rows.size(); ++i)
      if (const auto* e = estimate_or_null(c.rows[i])) {
        engine_L[i] = e->Lambda_hat;
        engine_b[i] = e->b_hat;
      }
    const auto dirs = convexity_directions(c.qgrid.k());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      for (const auto& d : dirs) {
        const auto up = shifted(c.qgrid, i, d);
        const auto down = shifted(c.qgrid, i, negate(d));
        if (up == static_cast<std::size_t>(-1) || down == static_cast<std::size_t>(-1)) continue;
        t.expect(c.oracle_B[up] + c.oracle_B[down] - 2.0 * c.oracle_B[i],
                 label(s, c.points[i]) + " oracle B midpoint");
        t.expect(engine_L[up] + engine_L[down] - 2.0 * engine_L[i],
                 label(s, c.points[i]) + " engine Lambda midpoint");
      }
      for (std::size_t a = 0; a < c.qgrid.k(); ++a) {
        std::vector<int> d(c.qgrid.k(), 0);
        d[a] = 1;
        const auto up = shifted(c.qgrid, i, d);
        if (up == static_cast<std::size_t>(-1)) continue;
        const auto what = label(s, c.points[i]) + " axis " + std::to_string(a + 1);
        t.expect(c.oracle_B[i] - c.oracle_B[up], what + " oracle B non-increasing");
        t.expect(engine_L[i] - engine_L[up], what + " engine Lambda non-increasing");
        t.expect(engine_b[i] - engine_b[up], what + " engine b non-increasing");
      }
    }
  }
  return t.finish();
}

PropertyCheck check_pseudo_convexity(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("pseudo-convexity", "b(alpha p + (1 - alpha) q) <= alpha B(p) + (1 - alpha) b(q)", 1e-6);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    std::mt19937_64 rng(*cfg.seed + 0x9E3779B97F4A7C15ULL * (s + 1));
    const auto draw = [&] {
      std::vector<double> q(c.spec.k());
      for (auto& v : q) v = cfg.q_axis.min + (cfg.q_axis.max - cfg.q_axis.min) * uniform01(rng);
      return QVector(std::move(q));
    };
    for (int i = 0; i < cfg.random_triples; ++i) {
      const auto p = draw();
      const auto q = draw();
      const double alpha = uniform01(rng);
      const auto m = mix(p, q, alpha);
      const auto ep = c.engine.estimate(p, cfg.engine_window);
      const auto eq = c.engine.estimate(q, cfg.engine_window);
      const auto em = c.engine.estimate(m, cfg.engine_window);
      t.expect(alpha * ep.B_hat + (1.0 - alpha) * eq.b_hat - em.b_hat,
               label(s, m) + " alpha=" + format_number(alpha));
    }
  }
  t.note("seed " + std::to_string(*cfg.seed) + ", " + std::to_string(cfg.random_triples) +
         " triples per spec");
  return t.finish();
}

PropertyCheck check_chain(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("chain-unit-vectors-signs",
          "b(q) <= B(q) <= Lambda(q); b(e_i) = B(e_i) = Lambda(e_i) = 0; all q_i < 1 => 0 <= b(q); "
          "all q_i > 1 => Lambda(q) <= 0",
          1e-9);
  std::size_t nonneg_points = 0, nonpos_points = 0;
  std::size_t provable_violations = 0, provable_points = 0;
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    for (int i = 0; i < c.spec.k(); ++i) {
      const auto e = QVector::unit(c.spec.k(), i);
      t.expect(-std::abs(solve_B(e, c.spec)), label(s, e) + " oracle B(e_i)");
      for (int n = cfg.engine_window.first; n <= cfg.engine_window.last; ++n)
        t.expect(-std::abs(c.engine.solve_t_star(e, n)),
                 label(s, e) + " engine t* level " + std::to_string(n));
    }
    for (const auto& row : c.rows) {
      const auto* e = estimate_or_null(row);
      if (!e) {
        t.expect(-std::numeric_limits<double>::infinity(), label(s, row.q) + " " + row.error);
        continue;
      }
      t.expect(e->B_hat - e->b_hat, label(s, row.q) + " b <= B");
      t.expect(e->Lambda_hat - e->B_hat, label(s, row.q) + " B <= Lambda");
      if (all_of_q(row.q, [](double v) { return v < 1.0; })) {
        ++nonneg_points;
        t.expect(e->b_hat, label(s, row.q) + " b_hat >= 0");
        const auto in_open = std::count_if(row.q.values().begin(), row.q.values().end(),
                                           [](double v) { return v > 0.0; });
        if (in_open <= 1) {
          ++provable_points;
          if (e->b_hat < -1e-9) ++provable_violations;
        }
      }
      if (all_of_q(row.q, [](double v) { return v > 1.0; })) {
        ++nonpos_points;
        t.expect(-e->Lambda_hat, label(s, row.q) + " Lambda_hat <= 0");
      }
    }
  }
  if (nonneg_points == 0) t.note("sign item q_i < 1: not applicable (no grid point in region)");
  if (nonpos_points == 0) t.note("sign item q_i > 1: not applicable (no grid point in region)");
  t.note("sign item q_i < 1 restricted to points with at most one coordinate in (0,1): " +
         std::to_string(provable_violations) + " violations in " +
         std::to_string(provable_points) + " points");
  return t.finish();
}

PropertyCheck check_dimension_bounds(std::span<const SpecContext> ctx, const VerifyConfig&) {
  Tally t("corollary-dimension-bounds",
          "all q_i <= 0 => b(q), B(q) >= dim_nu(E)(1 - |q|/k); all 0 <= q_i <= 1 => b(q), B(q) "
          "<= dim_nu(E)(1 - |q|/k); E = support",
          1e-9);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    const int k = c.spec.k();
    const double dim_support = solve_B(QVector(std::vector<double>(k, 0.0)), c.spec);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& q = c.points[i];
      const double bound = dim_support * (1.0 - q.sum() / k);
      const auto* e = estimate_or_null(c.rows[i]);
      if (all_of_q(q, [](double v) { return v <= 0.0; })) {
        t.expect(c.oracle_B[i] - bound, label(s, q) + " oracle lower bound");
        if (e) {
          t.expect(e->b_hat - bound, label(s, q) + " engine b lower bound");
          t.expect(e->B_hat - bound, label(s, q) + " engine B lower bound");
        }
      }
      if (all_of_q(q, [](double v) { return v >= 0.0 && v <= 1.0; })) {
        t.expect(bound - c.oracle_B[i], label(s, q) + " oracle upper bound");
        if (e) {
          t.expect(bound - e->b_hat, label(s, q) + " engine b upper bound");
          t.expect(bound - e->B_hat, label(s, q) + " engine B upper bound");
        }
      }
    }
  }
  return t.finish();
}

PropertyCheck check_ac_bounds(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("absolutely-continuous-bounds",
          "mu a.c., nu Ahlfors with index alpha: |q| in [0,1] => alpha b(q) >= 1 - |q|; all q_i >= 1 "
          "=> alpha B(q) <= max{k - |q|, -|q|(p-1)/p}",
          1e-9);
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& c : ctx) {
    if (c.spec.dim != 1) {
      t.note("d > 1 spec skipped: the a.c. bounds compare nu with one-dimensional Lebesgue measure");
      continue;
    }
    if (seen[{c.spec.k(), c.spec.base}]) continue;
    seen[{c.spec.k(), c.spec.base}] = true;

    const auto uspec = uniform_like(c.spec);
    const auto xi = build_cascade(uspec);
    const PartitionEngine engine(xi);
    const double alpha = ahlfors_index(xi.gauge(), {1, uspec.levels}).alpha;
    const int k = uspec.k();
    const double p = cfg.lp_exponent;
    const std::string tag = "uniform k=" + std::to_string(k) + " base " + std::to_string(uspec.base);
    for (const auto& q : c.points) {
      const double abs_q = q.sum();
      const bool lower = abs_q >= 0.0 && abs_q <= 1.0;
      const bool upper = all_of_q(q, [](double v) { return v >= 1.0; });
      if (!lower && !upper) continue;
      const auto e = engine.estimate(q, cfg.engine_window);
      const double B = solve_B(q, uspec);
      const auto what = tag + " q=" + format_vector(q.values());
      if (lower) {
        t.expect(alpha * B - (1.0 - abs_q), what + " oracle lower");
        t.expect(alpha * e.b_hat - (1.0 - abs_q), what + " engine lower");
      }
      if (upper) {
        const double cap = std::max(k - abs_q, -abs_q * (p - 1.0) / p);
        t.expect(cap - alpha * B, what + " oracle upper");
        t.expect(cap - alpha * e.B_hat, what + " engine upper");
      }
    }
    t.note(tag + ": alpha = " + format_number(alpha) + ", p = " + format_number(p));
  }
  return t.finish();
}

namespace {

QTable b_hat_table(const SpecContext& c) {
  QTable table{c.qgrid, {}};
  table.values.reserve(c.rows.size());
  for (const auto& row : c.rows)
    table.values.push_back(row.estimate ? row.estimate->b_hat
                                        : std::numeric_limits<double>::infinity());
  return table;
}

}  // namespace

PropertyCheck check_spectrum_upper_bound(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("spectrum-upper-bound",
          "dim_nu K(gamma) <= b*(gamma) = inf_q (<gamma, q> + b(q)); histogram at the spectrum "
          "level against the Legendre transform of the engine b table",
          0.05);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    const auto curve = histogram_spectrum(c.engine, cfg.spectrum_level);
    const auto table = b_hat_table(c);
    for (const auto& bin : curve.samples) {
      const auto lg = legendre(table, bin.gamma);
      t.expect(lg.value - bin.value, "spec " + std::to_string(s + 1) +
                                         " gamma=" + format_vector(bin.gamma));
    }
    t.note("spec " + std::to_string(s + 1) + ": " + std::to_string(curve.samples.size()) +
           " bins at level " + std::to_string(cfg.spectrum_level) +
           ", delta=" + format_vector(curve.delta));
  }
  return t.finish();
}

PropertyCheck check_level_set_bound(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("level-set-bound", "dim_nu(upper level set of gamma) <= gamma_i for every i", 0.05);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto curve = histogram_spectrum(ctx[s].engine, cfg.spectrum_level);
    for (const auto& bin : curve.samples)
      t.expect(*std::min_element(bin.gamma.begin(), bin.gamma.end()) - bin.value,
               "spec " + std::to_string(s + 1) + " gamma=" + format_vector(bin.gamma));
  }
  return t.finish();
}

PropertyCheck check_formalism(std::span<const SpecContext> ctx, const VerifyConfig& cfg) {
  Tally t("formalism-equality",
          "dim_nu E(-grad B(q)) = B*(-grad B(q)): canonical (gamma, f) equals the closed form", 1e-9);
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    const auto& c = ctx[s];
    for (const auto& q : product_points(cfg.formalism_q, c.spec.k())) {
      const auto exact = oracle_spectrum(q, c.spec);
      for (int level : cfg.formalism_levels) {
        const auto est = canonical_spectrum(c.engine, q, level);
        double err = std::abs(est.value - exact.value);
        for (std::size_t j = 0; j < exact.gamma.size(); ++j)
          err = std::max(err, std::abs(est.gamma[j] - exact.gamma[j]));
        t.expect(-err, label(s, q) + " level " + std::to_string(level));
      }
    }
  }
  return t.finish();
}

bool SuiteReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const PropertyCheck& c) { return c.status == CheckStatus::fail; });
}

SuiteReport run_suite(const VerifyConfig& cfg) {
  cfg.validate();
  std::vector<SpecContext> ctx;
  ctx.reserve(cfg.specs.size());
  for (const auto& s : cfg.specs) ctx.emplace_back(s, cfg);

  SuiteReport report;
  report.config = cfg;
  using CheckFn = PropertyCheck (*)(std::span<const SpecContext>, const VerifyConfig&);
  const CheckFn fns[] = {check_regularity_index, check_set_functions,
                         check_convexity_monotonicity, check_pseudo_convexity,
                         check_chain, check_dimension_bounds,
                         check_ac_bounds, check_spectrum_upper_bound,
                         check_level_set_bound, check_formalism};
  for (auto fn : fns) {
    try {
      report.checks.push_back(fn(ctx, cfg));
    } catch (const std::exception& e) {
      PropertyCheck failed;
      failed.status = CheckStatus::fail;
      failed.margin = -std::numeric_limits<double>::infinity();
      failed.notes.push_back(std::string("check aborted: ") + e.what());
      report.checks.push_back(std::move(failed));
    }
  }
  report.unverified = {
      {"corollary-hausdorff-beta",
       "all q_i >= 1 => b(q) >= beta/(beta-1) dim_nu(E), beta = max_i(1 - 1/q_i)",
       "beta/(beta-1) < 0 for q_i > 1; the inequality direction is ambiguous"},
      {"corollary-packing-beta",
       "all q_i >= 1 => B(q) >= beta/(beta-1) Dim_nu(E), beta = max_i(1 - 1/q_i)",
       "beta/(beta-1) < 0 for q_i > 1; the inequality direction is ambiguous"},
      {"corollary-ambient-bound", "dim_nu(E)(1 - |q|/k) <= n/k (k - |q|)",
       "n is not declared (ambient dimension or level)"},
      {"upper-bound-outside-domain", "gamma outside (a_low, a_high)^k => dim_nu K(gamma) <= 0",
       "domain endpoints come from scalarized ratios -b(q)/|q|; logged only"},
  };
  return report;
}

}  // namespace mixfrac
