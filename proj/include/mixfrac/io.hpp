#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixfrac/measure.hpp"
#include "mixfrac/oracle.hpp"
#include "mixfrac/partition.hpp"
#include "mixfrac/spectrum.hpp"
#include "mixfrac/verifier.hpp"

namespace mixfrac {

using Json = nlohmann::ordered_json;

// Writes `content` to `path`, creating parent directories. Errors carry the
// path.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// One point per line, whitespace-separated coordinates. Blank lines and
// lines starting with '#' are skipped. All points must share a dimension.
std::vector<std::vector<double>> parse_samples(const std::string& text);
std::vector<std::vector<double>> read_samples(const std::filesystem::path& path);
std::string format_samples(std::span<const std::vector<double>> points);

// Finest level only: level,index,mu_1..mu_k,nu.
std::string masses_csv(const VectorMeasure& xi);
std::string masses_csv(const MeasureTree& tree);

// q_1..q_k,b_hat,B_hat,Lambda_hat,residual; failed points are all nan.
std::string dimensions_csv(std::span<const SurfaceRow> rows, int k);
// q_1..q_k,level,t_star; one line per grid point and window level.
std::string tstar_csv(std::span<const SurfaceRow> rows, int k, LevelWindow window);
// gamma_1..gamma_k,value,method,level,delta
std::string spectrum_csv(const SpectrumCurve& curve, int k);
// q_1..q_k,B,dB_1..dB_k,gamma_1..gamma_k,f
std::string oracle_csv(std::span<const OracleResult> rows, int k);

// (gamma, value) scatter for k = 1 with an optional overlaid curve.
std::string spectrum_svg(const SpectrumCurve& curve, const SpectrumCurve* overlay = nullptr);

Json to_json(const CascadeSpec& s);
CascadeSpec cascade_spec_from_json(const Json& j);
Json to_json(const GridAxis& a);
GridAxis grid_axis_from_json(const Json& j);
Json to_json(const VerifyConfig& c);
VerifyConfig verify_config_from_json(const Json& j);
Json to_json(const PropertyCheck& c);
Json to_json(const SuiteReport& r);

// Fixed-width table of the checks, one line each.
std::string summary_text(const SuiteReport& r);

// 2-space indent plus trailing newline. Non-finite numbers become null.
std::string dump(const Json& j);

}  // namespace mixfrac
