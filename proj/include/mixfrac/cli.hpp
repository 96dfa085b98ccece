#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixfrac/io.hpp"
#include "mixfrac/measure.hpp"
#include "mixfrac/partition.hpp"
#include "mixfrac/spectrum.hpp"
#include "mixfrac/verifier.hpp"

namespace mixfrac {

enum class Command { cascade, ingest, estimate, spectrum, oracle, verify };
std::string to_string(Command c);
Command command_from_string(const std::string& s);

// Bad flags, inconsistent weights, invalid grids. Exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::estimate;
  int base = 2;
  int dim = 1;
  int levels = 12;
  // k analyzed weight vectors, gauge last.
  std::vector<std::vector<double>> weights;
  // Sample files, one per measure, gauge last. A single file is analyzed
  // against Lebesgue measure.
  std::vector<std::string> samples;
  // One axis per coordinate, or a single axis replicated over all of them.
  std::vector<GridAxis> q_axes{{-3.0, 3.0, 0.25}};
  std::optional<LevelWindow> window;
  std::optional<std::vector<double>> delta;
  SpectrumMethod method = SpectrumMethod::histogram;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  // cascade: number of points to draw from mu_1 into samples.txt.
  std::uint64_t draw = 0;
  std::optional<VerifyConfig> verify;

  // Throws UsageError.
  void validate() const;
  int k() const;
  CascadeSpec cascade_spec() const;
  QGrid qgrid() const;
  LevelWindow level_window() const;
  bool operator==(const RunConfig&) const = default;
};

Json to_json(const RunConfig& c);
RunConfig run_config_from_json(const Json& j);

// argv without the program name. Throws UsageError; `--help` output goes to
// `help` and yields nullopt.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& help);

// Draws `count` points from a cascade tree of the given weights (digit by
// digit, then uniform inside the finest cell).
std::vector<std::vector<double>> draw_cascade_samples(const GridShape& shape,
                                                      std::span<const double> weights,
                                                      std::uint64_t count, std::uint64_t seed);

// Runs the command and writes its file set under config.out. Returns the
// exit status: 0 on success, 1 when a point failed or a check failed.
int run_command(const RunConfig& config, std::ostream& log);

// parse_args + run_command with exit-status mapping (2 for usage errors).
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mixfrac
