#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixfrac/measure.hpp"
#include "mixfrac/partition.hpp"

namespace mixfrac {

enum class CheckStatus { pass, fail, unverified, not_applicable };
std::string to_string(CheckStatus s);

/// Outcome of one registered property check. `margin` is the worst slack
/// over every asserted inequality (negative means violated); the check
/// passes iff margin >= -tolerance. A check with no applicable grid point
/// is not_applicable.
struct PropertyCheck {
  std::string id;
  std::string anchor;  // the statement being checked
  CheckStatus status = CheckStatus::not_applicable;
  double margin = 0.0;
  double tolerance = 0.0;
  std::size_t assertions = 0;
  std::vector<std::string> notes;
};

// A registered statement that is deliberately not asserted.
struct UnverifiedItem {
  std::string id;
  std::string anchor;
  std::string reason;
};

struct VerifyConfig {
  std::vector<CascadeSpec> specs;
  // One axis, replicated over the k coordinates of each spec.
  GridAxis q_axis{-3.0, 3.0, 0.25};
  LevelWindow engine_window{4, 10};
  int spectrum_level = 16;
  std::vector<int> formalism_levels{8, 12};
  std::vector<double> formalism_q{-2.0, -1.0, 0.0, 1.0, 2.0};
  int random_triples = 200;
  double lp_exponent = 2.0;
  // Required: drives the random (p, q, alpha) triples.
  std::optional<std::uint64_t> seed;

  // Throws std::invalid_argument on any malformed spec or setting.
  void validate() const;
  bool operator==(const VerifyConfig&) const = default;
};

// Binomial (0.25,0.75)/uniform, the k=2 pair (0.25,0.75),(0.7,0.3)/uniform,
// and (0.7,0.3) against the non-uniform gauge (0.6,0.4); base 2, d = 1.
VerifyConfig default_verify_config();

/// Everything the checks need for one cascade: the measure built deep enough
/// for every requested level, its engine, and oracle/engine values over the
/// q-grid.
struct SpecContext {
  CascadeSpec spec;
  VectorMeasure xi;
  PartitionEngine engine;
  QGrid qgrid;
  std::vector<QVector> points;
  std::vector<double> oracle_B;
  std::vector<SurfaceRow> rows;

  SpecContext(const CascadeSpec& s, const VerifyConfig& cfg);
};

PropertyCheck check_regularity_index(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_set_functions(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_convexity_monotonicity(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_pseudo_convexity(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_chain(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_dimension_bounds(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_ac_bounds(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_spectrum_upper_bound(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_level_set_bound(std::span<const SpecContext> ctx, const VerifyConfig& cfg);
PropertyCheck check_formalism(std::span<const SpecContext> ctx, const VerifyConfig& cfg);

struct SuiteReport {
  VerifyConfig config;
  std::vector<PropertyCheck> checks;
  std::vector<UnverifiedItem> unverified;

  // No asserted check failed.
  bool passed() const;
};

SuiteReport run_suite(const VerifyConfig& cfg);

}  // namespace mixfrac
