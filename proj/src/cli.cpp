#include "mixfrac/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>

#include "mixfrac/format.hpp"
#include "mixfrac/oracle.hpp"

namespace mixfrac {

namespace fs = std::filesystem;

std::string to_string(Command c) {
  switch (c) {
    case Command::cascade: return "cascade";
    case Command::ingest: return "ingest";
    case Command::estimate: return "estimate";
    case Command::spectrum: return "spectrum";
    case Command::oracle: return "oracle";
    case Command::verify: return "verify";
  }
  return "unknown";
}

Command command_from_string(const std::string& s) {
  for (auto c : {Command::cascade, Command::ingest, Command::estimate, Command::spectrum,
                 Command::oracle, Command::verify})
    if (to_string(c) == s) return c;
  throw UsageError("unknown command '" + s + "'");
}

namespace {

SpectrumMethod method_from_string(const std::string& s) {
  for (auto m : {SpectrumMethod::oracle, SpectrumMethod::legendre, SpectrumMethod::canonical,
                 SpectrumMethod::histogram})
    if (to_string(m) == s) return m;
  throw UsageError("unknown spectrum method '" + s + "'");
}

double parse_double(std::string_view s, const std::string& what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError(what + ": bad number '" + std::string(s) + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_double(std::string_view(s).substr(start, comma - start), what));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

LevelWindow parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--window expects first:last");
  const auto a = parse_double(std::string_view(s).substr(0, colon), "--window");
  const auto b = parse_double(std::string_view(s).substr(colon + 1), "--window");
  if (a != std::floor(a) || b != std::floor(b)) throw UsageError("--window levels must be integers");
  return {static_cast<int>(a), static_cast<int>(b)};
}

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

int RunConfig::k() const {
  if (!weights.empty()) return static_cast<int>(weights.size()) - 1;
  if (samples.size() == 1) return 1;
  return static_cast<int>(samples.size()) - 1;
}

CascadeSpec RunConfig::cascade_spec() const { return {base, dim, levels, weights, false}; }

QGrid RunConfig::qgrid() const {
  const auto kk = static_cast<std::size_t>(k());
  if (q_axes.size() == 1) return {std::vector<GridAxis>(kk, q_axes.front())};
  return {q_axes};
}

LevelWindow RunConfig::level_window() const { return window ? *window : default_window(levels); }

void RunConfig::validate() const {
  const bool needs_measure = command != Command::verify;
  const bool cascade_only = command == Command::cascade || command == Command::oracle;
  if (command == Command::ingest && samples.empty()) throw UsageError("ingest needs --samples");
  if (needs_measure && weights.empty() && (samples.empty() || cascade_only))
    throw UsageError("missing --weights");
  if (!weights.empty() && !samples.empty()) throw UsageError("--weights and --samples are exclusive");
  if (base < 2) throw UsageError("--base must be >= 2");
  if (dim < 1) throw UsageError("--dim must be >= 1");
  if (levels < 1) throw UsageError("--levels must be >= 1");
  if (!weights.empty()) {
    if (weights.size() < 2) throw UsageError("--weights needs at least one measure plus the gauge");
    try {
      cascade_spec().validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (q_axes.empty()) throw UsageError("empty q-grid");
  if (needs_measure && q_axes.size() != 1 && static_cast<int>(q_axes.size()) != k())
    throw UsageError("q-grid has " + std::to_string(q_axes.size()) + " axes for k = " +
                     std::to_string(k()));
  for (const auto& a : q_axes)
    if (!(a.step > 0.0) || !(a.min <= a.max) || !std::isfinite(a.min) || !std::isfinite(a.max))
      throw UsageError("q-grid axis needs step > 0 and min <= max");
  if (window) {
    if (window->first < 1 || window->last > levels || window->size() < 3)
      throw UsageError("--window must lie in 1.." + std::to_string(levels) + " and hold >= 3 levels");
  }
  if (delta) {
    if (delta->empty()) throw UsageError("--delta is empty");
    for (double d : *delta)
      if (!(d > 0.0)) throw UsageError("--delta entries must be > 0");
    if (needs_measure && delta->size() != 1 && static_cast<int>(delta->size()) != k())
      throw UsageError("--delta needs 1 or k entries");
  }
  if (draw > 0 && !seed) throw UsageError("--draw needs --seed");
  if (command == Command::verify) {
    if (!verify) throw UsageError("verify config missing");
    try {
      verify->validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
}

Json to_json(const RunConfig& c) {
  Json j{{"command", to_string(c.command)}, {"base", c.base},     {"dim", c.dim},
         {"levels", c.levels},              {"weights", c.weights}, {"samples", c.samples}};
  Json axes = Json::array();
  for (const auto& a : c.q_axes) axes.push_back(to_json(a));
  j["q"] = axes;
  j["window"] = c.window ? Json{c.window->first, c.window->last} : Json(nullptr);
  j["delta"] = c.delta ? Json(*c.delta) : Json(nullptr);
  j["method"] = to_string(c.method);
  j["out"] = c.out;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["draw"] = c.draw;
  j["verify"] = c.verify ? to_json(*c.verify) : Json(nullptr);
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("command")) c.command = command_from_string(j.at("command").get<std::string>());
    c.base = j.value("base", c.base);
    c.dim = j.value("dim", c.dim);
    c.levels = j.value("levels", c.levels);
    if (j.contains("weights")) c.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    if (j.contains("samples")) c.samples = j.at("samples").get<std::vector<std::string>>();
    if (j.contains("q")) {
      c.q_axes.clear();
      for (const auto& a : j.at("q")) c.q_axes.push_back(grid_axis_from_json(a));
    }
    if (j.contains("window") && !j.at("window").is_null()) {
      const auto w = j.at("window").get<std::vector<int>>();
      if (w.size() != 2) throw UsageError("window must be [first, last]");
      c.window = LevelWindow{w[0], w[1]};
    }
    if (j.contains("delta") && !j.at("delta").is_null())
      c.delta = j.at("delta").get<std::vector<double>>();
    if (j.contains("method")) c.method = method_from_string(j.at("method").get<std::string>());
    c.out = j.value("out", c.out);
    if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
    c.draw = j.value("draw", c.draw);
    if (j.contains("verify") && !j.at("verify").is_null())
      c.verify = verify_config_from_json(j.at("verify"));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& help) {
  CLI::App app{"Mixed multifractal analysis of measures on b-adic grids", "mixfrac"};
  app.require_subcommand(1, 1);

  std::string config_path, window, delta, out, method;
  int base = 0, dim = 0, levels = 0;
  std::vector<std::string> weights, samples;
  std::vector<double> qmin, qmax, qstep;
  std::uint64_t seed = 0, draw = 0;

  const auto add_options = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run config; flags override its fields");
    sub->add_option("--base", base, "grid base b >= 2");
    sub->add_option("--dim", dim, "grid dimension d");
    sub->add_option("--levels", levels, "finest grid level");
    sub->add_option("--weights", weights, "comma-separated weights, one flag per measure, gauge last");
    sub->add_option("--samples", samples, "sample file, one flag per measure, gauge last");
    sub->add_option("--q-min", qmin, "q-grid minimum (repeat per coordinate)");
    sub->add_option("--q-max", qmax, "q-grid maximum (repeat per coordinate)");
    sub->add_option("--q-step", qstep, "q-grid step (repeat per coordinate)");
    sub->add_option("--delta", delta, "histogram bin widths, comma-separated");
    sub->add_option("--window", window, "level window first:last");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--draw", draw, "cascade: draw this many samples from mu_1");
    sub->add_option("--method", method, "spectrum: histogram | canonical | legendre | oracle");
  };
  std::vector<CLI::App*> subs;
  for (auto c : {Command::cascade, Command::ingest, Command::estimate, Command::spectrum,
                 Command::oracle, Command::verify}) {
    auto* sub = app.add_subcommand(to_string(c));
    add_options(sub);
    subs.push_back(sub);
  }
  subs[0]->description("build a multiplicative cascade and write its masses");
  subs[1]->description("build empirical measures from sample files");
  subs[2]->description("estimate b, B, Lambda over a q-grid");
  subs[3]->description("estimate the joint spectrum");
  subs[4]->description("closed-form cascade values over a q-grid");
  subs[5]->description("run the property suite");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, help, help);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, help, help);
      return std::nullopt;
    }
    throw UsageError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto given = [&](const char* name) { return sub->count(name) > 0; };

  RunConfig c;
  if (given("--config")) {
    Json j;
    try {
      j = Json::parse(read_file(config_path));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(config_path + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    c = run_config_from_json(j);
  }
  c.command = command_from_string(sub->get_name());
  if (given("--base")) c.base = base;
  if (given("--dim")) c.dim = dim;
  if (given("--levels")) c.levels = levels;
  if (given("--weights")) {
    c.weights.clear();
    for (const auto& w : weights) c.weights.push_back(parse_list(w, "--weights"));
  }
  if (given("--samples")) c.samples = samples;
  if (given("--q-min") || given("--q-max") || given("--q-step")) {
    const auto n = std::max({qmin.size(), qmax.size(), qstep.size()});
    const auto pick = [&](const std::vector<double>& v, std::size_t i, double fallback, const char* name) {
      if (v.empty()) return fallback;
      if (v.size() == 1) return v.front();
      if (v.size() != n) throw UsageError(std::string(name) + " given " + std::to_string(v.size()) +
                                          " times; expected 1 or " + std::to_string(n));
      return v[i];
    };
    const auto base_axis = c.q_axes.empty() ? GridAxis{-3.0, 3.0, 0.25} : c.q_axes.front();
    c.q_axes.clear();
    for (std::size_t i = 0; i < n; ++i)
      c.q_axes.push_back({pick(qmin, i, base_axis.min, "--q-min"), pick(qmax, i, base_axis.max, "--q-max"),
                          pick(qstep, i, base_axis.step, "--q-step")});
  }
  if (given("--delta")) c.delta = parse_list(delta, "--delta");
  if (given("--window")) c.window = parse_window(window);
  if (given("--out")) c.out = out;
  if (given("--seed")) c.seed = seed;
  if (given("--draw")) c.draw = draw;
  if (given("--method")) c.method = method_from_string(method);

  if (c.command == Command::verify) {
    if (!c.verify) c.verify = default_verify_config();
    auto& v = *c.verify;
    if (given("--seed")) v.seed = seed;
    if (given("--weights")) {
      v.specs = {c.cascade_spec()};
    }
    if (given("--q-min") || given("--q-max") || given("--q-step")) {
      if (c.q_axes.size() != 1) throw UsageError("verify takes one q axis (replicated over coordinates)");
      v.q_axis = c.q_axes.front();
    }
    if (given("--window")) v.engine_window = *c.window;
  }
  c.validate();
  return c;
}

std::vector<std::vector<double>> draw_cascade_samples(const GridShape& shape,
                                                      std::span<const double> weights,
                                                      std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) cdf[i] = acc += weights[i];
  std::vector<std::vector<double>> points;
  points.reserve(count);
  const auto b = static_cast<std::uint64_t>(shape.base);
  for (std::uint64_t p = 0; p < count; ++p) {
    std::vector<double> x(static_cast<std::size_t>(shape.dim), 0.0);
    double scale = 1.0;
    for (int n = 0; n < shape.max_level; ++n) {
      const double u = uniform01(rng) * acc;
      std::size_t c = 0;
      while (c + 1 < cdf.size() && (u >= cdf[c] || weights[c] == 0.0)) ++c;
      scale /= static_cast<double>(b);
      auto rest = static_cast<std::uint64_t>(c);
      for (auto& xa : x) {
        xa += static_cast<double>(rest % b) * scale;
        rest /= b;
      }
    }
    for (auto& xa : x) xa += uniform01(rng) * scale;
    points.push_back(std::move(x));
  }
  return points;
}

namespace {

struct Measures {
  std::optional<VectorMeasure> xi;
  std::optional<CascadeSpec> spec;
  std::vector<std::string> names;
};

Measures load_measures(const RunConfig& c) {
  Measures m;
  if (!c.weights.empty()) {
    m.spec = c.cascade_spec();
    m.xi.emplace(build_cascade(*m.spec));
  } else {
    std::vector<MeasureTree> trees;
    for (const auto& path : c.samples) {
      const auto pts = read_samples(path);
      trees.push_back(ingest_samples(pts, c.base, c.levels));
    }
    if (trees.size() == 1) trees.push_back(uniform_tree(trees.front().shape()));
    auto gauge = std::move(trees.back());
    trees.pop_back();
    m.xi.emplace(std::move(trees), std::move(gauge));
  }
  for (int j = 1; j <= m.xi->k(); ++j) m.names.push_back("mu_" + std::to_string(j));
  m.names.push_back("nu");
  return m;
}

Json tree_diagnostics(const std::string& name, const MeasureTree& tree) {
  const auto trace = ahlfors_index(tree, {1, tree.max_level()});
  return Json{{"name", name},
              {"ahlfors_index", trace.alpha},
              {"ahlfors_level_min", trace.level_min},
              {"doubling_ratio", doubling_ratio(tree, 2.0, tree.max_level())},
              {"additivity_defect", tree.additivity_defect()}};
}

std::string diagnostics_json(const Measures& m) {
  const auto& xi = *m.xi;
  Json trees = Json::array();
  for (int j = 0; j < xi.k(); ++j) trees.push_back(tree_diagnostics(m.names[j], xi.analyzed(j)));
  trees.push_back(tree_diagnostics("nu", xi.gauge()));
  Json j{{"base", xi.shape().base}, {"dim", xi.shape().dim}, {"levels", xi.shape().max_level},
         {"measures", trees}};
  return dump(j);
}

SpectrumCurve oracle_curve(const CascadeSpec& spec, std::span<const QVector> qs) {
  SpectrumCurve curve;
  curve.method = SpectrumMethod::oracle;
  curve.level = spec.levels;
  for (const auto& q : qs) {
    curve.samples.push_back(oracle_spectrum(q, spec));
    curve.qgrid.push_back(q);
  }
  return curve;
}

// Dense k = 1 overlay: q from -20 to 20.
SpectrumCurve oracle_overlay(const CascadeSpec& spec) {
  std::vector<QVector> qs;
  for (int i = -400; i <= 400; ++i) qs.push_back(QVector{i * 0.05});
  return oracle_curve(spec, qs);
}

void write_spectrum(const RunConfig& c, const Measures& m, const SpectrumCurve& curve, std::ostream& log) {
  const fs::path out(c.out);
  write_file(out / "spectrum.csv", spectrum_csv(curve, m.xi->k()));
  if (m.xi->k() == 1) {
    std::optional<SpectrumCurve> overlay;
    if (m.spec) overlay = oracle_overlay(*m.spec);
    write_file(out / "spectrum.svg", spectrum_svg(curve, overlay ? &*overlay : nullptr));
  } else {
    log << "warning: k = " << m.xi->k() << ", spectrum.svg is written for k = 1 only\n";
  }
}

int run_estimate(const RunConfig& c, const Measures& m, std::ostream& log) {
  const PartitionEngine engine(*m.xi);
  const auto points = c.qgrid().points();
  const auto window = c.level_window();
  const auto rows = qgrid_surface(engine, points, window);
  const fs::path out(c.out);
  write_file(out / "dimensions.csv", dimensions_csv(rows, m.xi->k()));
  write_file(out / "tstar.csv", tstar_csv(rows, m.xi->k(), window));
  int failed = 0;
  for (const auto& r : rows)
    if (!r.estimate) {
      ++failed;
      log << "error: q=" << format_vector(r.q.values()) << ": " << r.error << '\n';
    }
  log << rows.size() << " grid points, levels " << window.first << ".." << window.last << ", "
      << failed << " failed\n";
  return failed ? 1 : 0;
}

int run_spectrum(const RunConfig& c, const Measures& m, std::ostream& log) {
  const PartitionEngine engine(*m.xi);
  const int level = c.levels;
  std::optional<std::vector<double>> delta = c.delta;
  if (delta && delta->size() == 1) delta = std::vector<double>(m.xi->k(), delta->front());
  SpectrumCurve curve;
  int failed = 0;
  switch (c.method) {
    case SpectrumMethod::histogram:
      curve = histogram_spectrum(engine, level, delta);
      break;
    case SpectrumMethod::canonical: {
      curve.method = SpectrumMethod::canonical;
      curve.level = level;
      for (const auto& q : c.qgrid().points()) {
        try {
          curve.samples.push_back(canonical_spectrum(engine, q, level));
          curve.qgrid.push_back(q);
        } catch (const std::exception& e) {
          ++failed;
          log << "error: q=" << format_vector(q.values()) << ": " << e.what() << '\n';
        }
      }
      break;
    }
    case SpectrumMethod::legendre: {
      const auto grid = c.qgrid();
      const auto rows = qgrid_surface(engine, grid.points(), c.level_window());
      QTable table{grid, {}};
      for (const auto& r : rows) {
        if (!r.estimate) ++failed;
        table.values.push_back(r.estimate ? r.estimate->b_hat : std::numeric_limits<double>::infinity());
      }
      const auto bins = histogram_spectrum(engine, level, delta);
      curve.method = SpectrumMethod::legendre;
      curve.level = level;
      curve.delta = bins.delta;
      for (const auto& bin : bins.samples)
        curve.samples.push_back({bin.gamma, legendre(table, bin.gamma).value, 0});
      break;
    }
    case SpectrumMethod::oracle: {
      if (!m.spec) throw UsageError("--method oracle needs --weights");
      curve = oracle_curve(*m.spec, c.qgrid().points());
      break;
    }
  }
  write_spectrum(c, m, curve, log);
  log << curve.samples.size() << " spectrum samples (" << to_string(curve.method) << ", level "
      << level << ")\n";
  return failed ? 1 : 0;
}

int run_oracle(const RunConfig& c, const Measures& m, std::ostream& log) {
  const auto points = c.qgrid().points();
  std::vector<OracleResult> rows;
  rows.reserve(points.size());
  for (const auto& q : points) rows.push_back(oracle_point(q, *m.spec));
  write_file(fs::path(c.out) / "oracle.csv", oracle_csv(rows, m.xi->k()));
  write_spectrum(c, m, oracle_curve(*m.spec, points), log);
  log << rows.size() << " oracle points\n";
  return 0;
}

int run_verify(const RunConfig& c, std::ostream& log) {
  const auto report = run_suite(*c.verify);
  const fs::path out(c.out);
  write_file(out / "report.json", dump(to_json(report)));
  const auto summary = summary_text(report);
  write_file(out / "summary.txt", summary);
  log << summary;
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_command(const RunConfig& c, std::ostream& log) {
  c.validate();
  const fs::path out(c.out);
  write_file(out / "config.json", dump(to_json(c)));
  if (c.command == Command::verify) return run_verify(c, log);

  const auto m = load_measures(c);
  switch (c.command) {
    case Command::cascade:
    case Command::ingest:
      write_file(out / "masses.csv", masses_csv(*m.xi));
      write_file(out / "diagnostics.json", diagnostics_json(m));
      if (c.command == Command::cascade && c.draw > 0) {
        const auto pts = draw_cascade_samples(m.xi->shape(), m.spec->analyzed(0), c.draw, *c.seed);
        write_file(out / "samples.txt", format_samples(pts));
      }
      log << "wrote " << m.xi->shape().cells_at(c.levels) << " cells at level " << c.levels << '\n';
      return 0;
    case Command::estimate: return run_estimate(c, m, log);
    case Command::spectrum: return run_spectrum(c, m, log);
    case Command::oracle: return run_oracle(c, m, log);
    case Command::verify: break;
  }
  return 0;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto config = parse_args(args, out);
    if (!config) return 0;
    return run_command(*config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for the flag list\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mixfrac
