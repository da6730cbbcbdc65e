#pragma once

#include "tripmd/common.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tripmd {

/// Half-open interval [start, end) of one trip.
struct SubseqRef {
  std::string trip_id;
  Index start = 0;
  Index end = 0;

  Index length() const noexcept { return end - start; }

  friend bool operator==(const SubseqRef&, const SubseqRef&) = default;
  friend auto operator<=>(const SubseqRef&, const SubseqRef&) = default;
};

/// True iff both refs name the same trip and their intervals share an index.
bool overlap(const SubseqRef& a, const SubseqRef& b) noexcept;

struct TripRecording {
  std::string trip_id;
  std::string driver_id;
  Route route = Route::other;
  std::optional<Behavior> behavior;
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_names;
  Series samples;

  Index length() const noexcept { return samples.rows(); }
  Index channels() const noexcept { return samples.cols(); }

  /// Throws Error(invalid_argument) when a structural invariant is broken.
  void validate() const;
};

struct TripMetadata {
  std::string trip_id;
  std::string driver_id;
  Route route = Route::other;
  std::optional<Behavior> behavior;
};

struct LoadOptions {
  /// Channel columns to ingest, in this order. Empty ingests every column
  /// after the timestamp.
  std::vector<std::string> channels;
  double sample_rate_hz = 0.0;
};

std::vector<TripMetadata> read_metadata(const std::filesystem::path& path);

/// Reads one trip file (header `timestamp,<channel>,...`). Metadata fields
/// other than trip_id are left at their defaults.
TripRecording read_trip_file(const std::filesystem::path& path, const LoadOptions& options);

/// Loads every `*.csv` file of `directory` (sorted by name) and joins the
/// metadata row whose trip_id equals the file stem.
std::vector<TripRecording> load_trips(const std::filesystem::path& directory,
                                      const std::filesystem::path& metadata_path,
                                      const LoadOptions& options);

/// Block-mean down-sampling; the trailing partial block is dropped.
TripRecording downsample(const TripRecording& trip, double target_hz);

Series slice(const TripRecording& trip, const SubseqRef& ref);

}  // namespace tripmd
