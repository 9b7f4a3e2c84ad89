#pragma once

// Serialization of analyses: CSV tables, a structured JSON report, SVG phase
// portraits and parameter-sweep atlases.  Every emitter is a pure function of
// its inputs, so identical inputs give byte-identical text.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equicycle/abel.hpp"
#include "equicycle/dynamics.hpp"
#include "equicycle/equilibria.hpp"
#include "equicycle/model.hpp"

namespace equicycle {

inline constexpr const char* kToolVersion = "0.1.0";

struct Provenance {
  std::string tool_version = kToolVersion;
  /// FNV-1a 64-bit hash of the parameters and integrator settings, as 16 hex
  /// digits.
  std::string config_hash;
};

struct AnalysisReport {
  Params params;
  IntegratorConfig integrator;
  RegionClass region;
  LyapunovConstants origin;
  SignRegion sigma_A;
  SignRegion sigma_B;
  /// Only defined for s2 > 1.
  std::optional<TheoremConditions> conditions;
  std::vector<Equilibrium> equilibria;
  std::vector<CycleResult> cycles;
  /// false when cycles were not searched for.
  bool cycles_searched = false;
  Provenance provenance;
};

std::string config_hash(const Params& params, const IntegratorConfig& cfg);

/// Runs the equilibrium analysis and, when `search_cycles`, the cycle scan.
/// Throws Inadmissible for inadmissible parameters.
AnalysisReport analyze(const Params& params, const IntegratorConfig& cfg,
                       bool search_cycles = true);

/// Empty when the report is consistent, otherwise one message per problem.
std::vector<std::string> report_problems(const AnalysisReport& report);

/// Throws InvalidArgument listing report_problems, if any.
void validate_report(const AnalysisReport& report);

/// Formats with 15 significant digits; "nan", "inf" and "-inf" otherwise.
std::string format_real(double v);

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& field);

/// Splits one CSV document into rows of unquoted fields.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// One header line, then one row per equilibrium and one per cycle.  The
/// `record` column tells the row kinds apart; fields that do not apply to a
/// row kind are empty.
std::string emit_csv(const AnalysisReport& report);

/// Pretty-printed JSON with a fixed key order.
std::string emit_json(const AnalysisReport& report);

/// Plain "key: value" lines for terminals.
std::string emit_text(const AnalysisReport& report);

/// Polyline drawn in a portrait, typically a separatrix.
struct Trajectory {
  std::vector<PlanePoint> points;
  std::string label = "separatrix";
};

/// SVG 1.1 portrait in z-plane coordinates.  The SVG y axis points down, so
/// drawn coordinates are (x, -y); each equilibrium glyph also carries its
/// exact coordinates in data-x / data-y attributes.
std::string emit_svg_portrait(const AnalysisReport& report,
                              std::span<const Trajectory> trajectories);

inline constexpr double kDefaultSeparatrixSpan = 10.0;

/// Separatrices of every saddle and saddle-node, followed over `s_span` of
/// rescaled time (TimeScale::Rescaled) in the direction given by each
/// eigenvalue's sign; both directions for a zero eigenvalue.  Tracing stops
/// at 1.5 times the radius of the equilibria, cycles and the curve where
/// dtheta/dt = 0.
std::vector<Trajectory> trace_separatrices(const AnalysisReport& report,
                                           double s_span = kDefaultSeparatrixSpan);

struct SweepNode {
  Params params;
  double q_value = 0.0;
  /// 0 when the node could not be analyzed.
  int region_count = 0;
  std::optional<bool> cond_i;
  std::optional<bool> cond_ii;
  int cycle_count = 0;
  /// "ok" or the error code that stopped the analysis.
  std::string status = "ok";
};

/// Analyzes one node, recording errors in `status` instead of throwing.
SweepNode sweep_node(const Params& params, const IntegratorConfig& cfg);

/// Header plus one row per node in the given order.
std::string emit_sweep_grid(std::span<const SweepNode> nodes);

}  // namespace equicycle
