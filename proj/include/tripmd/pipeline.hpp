#pragma once

#include "tripmd/behavior.hpp"
#include "tripmd/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tripmd {

/// Every knob of a run. Durations are in seconds and converted to samples at
/// the target rate with round-half-up.
struct RunConfig {
  std::filesystem::path trips_dir;
  std::filesystem::path metadata;
  /// Output of a previous stage (summarize and analyze read from here).
  std::filesystem::path input_dir;
  std::filesystem::path out_dir;

  std::vector<std::string> channels;
  /// Only trips of these drivers are extracted; empty keeps all.
  std::vector<std::string> drivers;
  double input_rate_hz = 0.0;
  std::optional<double> target_rate_hz;
  double letter_seconds = 1.0;
  Index min_pattern_size = 3;
  std::optional<double> radius;
  double radius_percentile = 0.5;
  double probe_seconds = 3.0;
  Index epochs = 20;
  std::optional<double> dtw_window_seconds;
  std::uint64_t seed = 42;
  bool export_letters = false;

  std::string test_driver;
  std::size_t bootstrap = 1000;

  double target_rate() const { return target_rate_hz.value_or(input_rate_hz); }
  Index letter_size() const;
};

struct ExtractReport {
  std::size_t trips = 0;
  Index letter_size = 0;
  Index letters = 0;
  double radius = 0.0;
  bool radius_estimated = false;
  std::size_t motifs = 0;
};

/// Loads, down-samples and encodes the trips, estimates the radius when not
/// given, extracts motifs, and writes trips.csv, breakpoints.csv, motifs.csv,
/// centers.csv and extract_manifest.ini to out_dir.
ExtractReport cmd_extract(const RunConfig& config);

struct SummarizeReport {
  std::size_t motifs = 0;
  std::size_t anchors = 0;
  Index grid_side = 0;
  Index dtw_window = 0;
};

/// Ranks and prunes the motifs of input_dir, trains the DTW-SOM and writes
/// ranked.csv, anchors.csv, prototypes.csv, u_matrix.csv, winner_matrix.csv,
/// assignments.csv and summarize_manifest.ini.
SummarizeReport cmd_summarize(const RunConfig& config);

struct AnalyzeReport {
  std::vector<BehaviorScore> scores;
  std::map<std::string, std::optional<Behavior>> truth;
  std::vector<BootstrapStats> bootstrap;
  ClusterBehaviorRates rates;
};

/// Leave-one-driver-out scoring of `test_driver`'s trips from the other
/// drivers' labels. Writes counts.csv, rates.csv, scores.csv, bootstrap.csv
/// (when bootstrap > 0) and analyze_manifest.ini.
AnalyzeReport cmd_analyze(const RunConfig& config);

}  // namespace tripmd
