#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlen/apen.hpp"
#include "rlen/cpd.hpp"
#include "rlen/lag_select.hpp"
#include "rlen/series_matrix.hpp"
#include "rlen/simulate.hpp"

namespace rlen {

inline constexpr const char* kVersion = "0.1.0";

enum class Method { kRlen, kApEn, kMean, kVariance };

struct GridParams {
  int points;
  double lo_factor;  // lower bound factor on n^{-1/(4+m)}
  double hi_factor;  // upper bound factor, capped below 0.5
};

struct RunConfig {
  // Exactly one of input_path / simulate must be set. simulate is "case1",
  // "case2", "case3" or the path of a JSON simulation spec.
  std::string input_path;
  std::string simulate;
  double case1_alpha = 1.5;
  std::size_t sim_n = 0, sim_p1 = 0, sim_p2 = 0;  // 0 keeps the case defaults

  Method method = Method::kRlen;
  std::optional<std::size_t> fixed_m;  // skips lag selection
  std::size_t M = 10;
  GridParams entropy_grid{20, 0.2, 4.0};
  GridParams regression_grid{15, 0.5, 4.0};

  std::optional<double> penalty;       // mean-shift heuristic when absent
  std::optional<std::size_t> fixed_k;  // exact-K search instead of PELT
  std::size_t min_seg = 2;

  double apen_r = 0.2;
  bool apen_r_absolute = false;

  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  bool auto_transform = true;
  std::string output_path;

  bool operator==(const RunConfig&) const = default;
};

struct SegmentSummary {
  std::size_t size = 0;
  double mean = 0.0;
  double stddev = 0.0;

  bool operator==(const SegmentSummary&) const = default;
};

struct LagTableEntry {
  double bic = 0.0, h_star = 0.0, sigma2 = 0.0, v = 0.0;

  bool operator==(const LagTableEntry&) const = default;
};

struct RunReport {
  std::string version;
  RunConfig config;

  std::size_t m_used = 0;
  bool lag_selected = false;             // true when Algorithm 1 ran
  std::vector<double> bic_bar;           // per m = 1..M when lag_selected
  std::vector<std::vector<LagTableEntry>> lag_table;  // [column][m-1]

  std::vector<std::string> column_names;
  std::vector<double> stat_values;       // per-column statistic
  std::vector<double> stat_bandwidths;   // selected h per column (rlen only)

  std::vector<std::size_t> changepoints;
  std::vector<double> segment_means;
  double penalty_used = 0.0;
  std::vector<SegmentSummary> segments;
  std::vector<double> welch_p;  // per adjacent segment pair; NaN when undefined

  std::vector<std::string> warnings;

  // Wall-clock milliseconds. Deliberately excluded from the serialized
  // document so identical configs produce byte-identical reports.
  double timing_ms = 0.0;

  bool equals_serialized(const RunReport& other) const;
};

/// Full run: ingest or simulate, optional logistic auto-transform, lag
/// selection unless m is fixed, per-column statistic, change-point
/// detection, per-segment summaries with Welch tests.
RunReport run_pipeline(const RunConfig& config);

/// Canonical JSON document: stable field order, doubles with 17 significant
/// digits (NaN serialized as null).
std::string report_to_json(const RunReport& report);

/// Inverse of report_to_json for round-trip checks and downstream tooling.
RunReport report_from_json(const std::string& text);

void write_report(const RunReport& report, const std::string& path);

/// Matrix resolution used by run_pipeline; exposed for the CLI simulate
/// subcommand. Returns the matrix plus the true change-point when simulated.
std::pair<SeriesMatrix, std::optional<std::size_t>> resolve_input(const RunConfig& config);

}  // namespace rlen
