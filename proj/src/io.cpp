#include "mixfrac/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mixfrac/format.hpp"

namespace mixfrac {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error(path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> parse_samples(const std::string& text) {
  std::vector<std::vector<double>> points;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    std::vector<double> p;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
      p.push_back(v);
    }
    if (!points.empty() && p.size() != points.front().size())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(points.front().size()) + " coordinates");
    points.push_back(std::move(p));
  }
  if (points.empty()) throw std::invalid_argument("no sample points");
  return points;
}

std::vector<std::vector<double>> read_samples(const fs::path& path) {
  try {
    return parse_samples(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string format_samples(std::span<const std::vector<double>> points) {
  std::string out;
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out += ' ';
      out += format_number(p[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

void header(std::string& out, const char* prefix, int k) {
  for (int j = 1; j <= k; ++j) {
    out += prefix;
    out += std::to_string(j);
    out += ',';
  }
}

void values(std::string& out, std::span<const double> v) {
  for (double x : v) {
    out += format_number(x);
    out += ',';
  }
}

}  // namespace

std::string masses_csv(const VectorMeasure& xi) {
  const int n = xi.shape().max_level;
  std::string out = "level,index,";
  header(out, "mu_", xi.k());
  out += "nu\n";
  const auto cells = xi.shape().cells_at(n);
  for (std::uint64_t i = 0; i < cells; ++i) {
    out += std::to_string(n) + ',' + std::to_string(i) + ',';
    for (int j = 0; j < xi.k(); ++j) out += format_number(xi.analyzed(j).mass(n, i)) + ',';
    out += format_number(xi.gauge().mass(n, i)) + '\n';
  }
  return out;
}

std::string masses_csv(const MeasureTree& tree) {
  const int n = tree.max_level();
  std::string out = "level,index,mass\n";
  const auto cells = tree.shape().cells_at(n);
  for (std::uint64_t i = 0; i < cells; ++i)
    out += std::to_string(n) + ',' + std::to_string(i) + ',' + format_number(tree.mass(n, i)) + '\n';
  return out;
}

std::string dimensions_csv(std::span<const SurfaceRow> rows, int k) {
  std::string out;
  header(out, "q_", k);
  out += "b_hat,B_hat,Lambda_hat,residual\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : rows) {
    values(out, row.q.values());
    if (row.estimate) {
      const auto& e = *row.estimate;
      out += format_number(e.b_hat) + ',' + format_number(e.B_hat) + ',' +
             format_number(e.Lambda_hat) + ',' + format_number(e.residual) + '\n';
    } else {
      out += format_number(nan) + ',' + format_number(nan) + ',' + format_number(nan) + ',' +
             format_number(nan) + '\n';
    }
  }
  return out;
}

std::string tstar_csv(std::span<const SurfaceRow> rows, int k, LevelWindow window) {
  std::string out;
  header(out, "q_", k);
  out += "level,t_star\n";
  for (const auto& row : rows) {
    for (int n = window.first; n <= window.last; ++n) {
      values(out, row.q.values());
      double t = std::numeric_limits<double>::quiet_NaN();
      if (row.estimate) t = row.estimate->t_star[static_cast<std::size_t>(n - window.first)];
      out += std::to_string(n) + ',' + format_number(t) + '\n';
    }
  }
  return out;
}

std::string spectrum_csv(const SpectrumCurve& curve, int k) {
  std::string out;
  header(out, "gamma_", k);
  out += "value,method,level,delta\n";
  std::string delta;
  if (!curve.delta.empty()) {
    const bool same = std::all_of(curve.delta.begin(), curve.delta.end(),
                                  [&](double d) { return d == curve.delta.front(); });
    if (same) {
      delta = format_number(curve.delta.front());
    } else {
      for (std::size_t i = 0; i < curve.delta.size(); ++i) {
        if (i) delta += ';';
        delta += format_number(curve.delta[i]);
      }
    }
  }
  for (const auto& s : curve.samples) {
    values(out, s.gamma);
    out += format_number(s.value) + ',' + to_string(curve.method) + ',' +
           std::to_string(curve.level) + ',' + delta + '\n';
  }
  return out;
}

std::string oracle_csv(std::span<const OracleResult> rows, int k) {
  std::string out;
  header(out, "q_", k);
  out += "B,";
  header(out, "dB_", k);
  header(out, "gamma_", k);
  out += "f\n";
  for (const auto& r : rows) {
    values(out, r.q.values());
    out += format_number(r.B) + ',';
    values(out, r.gradB);
    values(out, r.gamma);
    out += format_number(r.f) + '\n';
  }
  return out;
}

std::string spectrum_svg(const SpectrumCurve& curve, const SpectrumCurve* overlay) {
  constexpr double W = 640, H = 420, L = 60, R = 20, T = 20, B = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = 0.0, ymax = 0.0;
  auto extend = [&](const SpectrumCurve& c) {
    for (const auto& s : c.samples) {
      if (s.gamma.empty() || !std::isfinite(s.gamma[0]) || !std::isfinite(s.value)) continue;
      xmin = std::min(xmin, s.gamma[0]);
      xmax = std::max(xmax, s.gamma[0]);
      ymin = std::min(ymin, s.value);
      ymax = std::max(ymax, s.value);
    }
  };
  extend(curve);
  if (overlay) extend(*overlay);
  if (!(xmin <= xmax)) xmin = 0.0, xmax = 1.0;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" viewBox=\"0 0 640 420\">\n"
      "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  out += "<line x1=\"" + format_number(L) + "\" y1=\"" + format_number(H - B) + "\" x2=\"" +
         format_number(W - R) + "\" y2=\"" + format_number(H - B) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + format_number(L) + "\" y1=\"" + format_number(T) + "\" x2=\"" +
         format_number(L) + "\" y2=\"" + format_number(H - B) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + format_number(W / 2) + "\" y=\"" + format_number(H - 10) +
         "\" font-size=\"14\" text-anchor=\"middle\">gamma</text>\n";
  out += "<text x=\"15\" y=\"" + format_number(H / 2) + "\" font-size=\"14\" transform=\"rotate(-90 15 " +
         format_number(H / 2) + ")\" text-anchor=\"middle\">value</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = xmin + (xmax - xmin) * i / 4.0;
    const double y = ymin + (ymax - ymin) * i / 4.0;
    out += "<text x=\"" + format_number(px(x)) + "\" y=\"" + format_number(H - B + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + format_number(std::round(x * 1e3) / 1e3) +
           "</text>\n";
    out += "<text x=\"" + format_number(L - 6) + "\" y=\"" + format_number(py(y) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + format_number(std::round(y * 1e3) / 1e3) +
           "</text>\n";
  }
  if (overlay && !overlay->samples.empty()) {
    out += "<polyline fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& s : overlay->samples) {
      if (!std::isfinite(s.gamma[0]) || !std::isfinite(s.value)) continue;
      if (!first) out += ' ';
      first = false;
      out += format_number(px(s.gamma[0])) + ',' + format_number(py(s.value));
    }
    out += "\"/>\n";
  }
  for (const auto& s : curve.samples) {
    if (s.gamma.empty() || !std::isfinite(s.gamma[0]) || !std::isfinite(s.value)) continue;
    out += "<circle cx=\"" + format_number(px(s.gamma[0])) + "\" cy=\"" + format_number(py(s.value)) +
           "\" r=\"2.5\" fill=\"#2050a0\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

Json to_json(const CascadeSpec& s) {
  return Json{{"base", s.base}, {"dim", s.dim}, {"levels", s.levels},
              {"weights", s.weights}, {"degenerate", s.degenerate}};
}

CascadeSpec cascade_spec_from_json(const Json& j) {
  CascadeSpec s;
  s.base = j.value("base", 2);
  s.dim = j.value("dim", 1);
  s.levels = j.value("levels", 12);
  s.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  s.degenerate = j.value("degenerate", false);
  return s;
}

Json to_json(const GridAxis& a) { return Json{{"min", a.min}, {"max", a.max}, {"step", a.step}}; }

GridAxis grid_axis_from_json(const Json& j) {
  return {j.at("min").get<double>(), j.at("max").get<double>(), j.at("step").get<double>()};
}

Json to_json(const VerifyConfig& c) {
  Json specs = Json::array();
  for (const auto& s : c.specs) specs.push_back(to_json(s));
  Json j{{"specs", specs},
         {"q_axis", to_json(c.q_axis)},
         {"engine_window", {c.engine_window.first, c.engine_window.last}},
         {"spectrum_level", c.spectrum_level},
         {"formalism_levels", c.formalism_levels},
         {"formalism_q", c.formalism_q},
         {"random_triples", c.random_triples},
         {"lp_exponent", c.lp_exponent}};
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  return j;
}

VerifyConfig verify_config_from_json(const Json& j) {
  VerifyConfig c = default_verify_config();
  if (j.contains("specs")) {
    c.specs.clear();
    for (const auto& s : j.at("specs")) c.specs.push_back(cascade_spec_from_json(s));
  }
  if (j.contains("q_axis")) c.q_axis = grid_axis_from_json(j.at("q_axis"));
  if (j.contains("engine_window")) {
    const auto w = j.at("engine_window").get<std::vector<int>>();
    if (w.size() != 2) throw std::invalid_argument("engine_window must be [first, last]");
    c.engine_window = {w[0], w[1]};
  }
  c.spectrum_level = j.value("spectrum_level", c.spectrum_level);
  if (j.contains("formalism_levels"))
    c.formalism_levels = j.at("formalism_levels").get<std::vector<int>>();
  if (j.contains("formalism_q")) c.formalism_q = j.at("formalism_q").get<std::vector<double>>();
  c.random_triples = j.value("random_triples", c.random_triples);
  c.lp_exponent = j.value("lp_exponent", c.lp_exponent);
  if (j.contains("seed")) {
    if (j.at("seed").is_null())
      c.seed.reset();
    else
      c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

Json to_json(const PropertyCheck& c) {
  return Json{{"id", c.id},
              {"anchor", c.anchor},
              {"status", to_string(c.status)},
              {"margin", c.margin},
              {"tolerance", c.tolerance},
              {"assertions", c.assertions},
              {"notes", c.notes}};
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json unverified = Json::array();
  for (const auto& u : r.unverified)
    unverified.push_back(Json{{"id", u.id}, {"anchor", u.anchor}, {"reason", u.reason}});
  return Json{{"passed", r.passed()},
              {"config", to_json(r.config)},
              {"checks", checks},
              {"unverified", unverified}};
}

std::string summary_text(const SuiteReport& r) {
  std::size_t width = 2;
  for (const auto& c : r.checks) width = std::max(width, c.id.size());
  std::string out;
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(s.size(), n), ' ');
    return s;
  };
  out += pad("id", width) + "  " + pad("status", 14) + "  " + pad("margin", 14) + "  tolerance  assertions\n";
  for (const auto& c : r.checks)
    out += pad(c.id, width) + "  " + pad(to_string(c.status), 14) + "  " + pad(format_number(c.margin), 14) +
           "  " + pad(format_number(c.tolerance), 9) + "  " + std::to_string(c.assertions) + '\n';
  for (const auto& u : r.unverified) out += pad(u.id, width) + "  unverified      " + u.reason + '\n';
  out += r.passed() ? "result: pass\n" : "result: fail\n";
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mixfrac
