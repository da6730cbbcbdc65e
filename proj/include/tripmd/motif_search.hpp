#pragma once

#include "tripmd/dtw.hpp"
#include "tripmd/trip_data.hpp"
#include "tripmd/vsax.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tripmd {

/// The largest group of non-overlapping subsequences sharing one VSAX word,
/// all within the radius of the center.
struct Motif {
  Index id = -1;
  Pattern pattern;
  SubseqRef center;
  /// Excludes the center; ordered by (trip, start).
  std::vector<SubseqRef> members;
  double mean_member_distance = 0.0;
  Series center_values;

  Index pattern_size() const noexcept { return static_cast<Index>(pattern.size()); }
  Index occurrences() const noexcept { return static_cast<Index>(members.size()) + 1; }
};

struct SearchParams {
  Index letter_size = 5;
  Index min_pattern_size = 3;
  double radius = 0.0;
  DtwConfig dtw;

  void validate() const;
};

struct RadiusOptions {
  /// In percent: 0.5 is the 0.5th percentile.
  double percentile = 0.5;
  double probe_seconds = 3.0;
  DtwConfig dtw;
  std::size_t max_pairs = 2'000'000;
  std::uint64_t seed = 0x7269'6d64;
};

struct RadiusEstimate {
  double radius = 0.0;
  std::size_t probes = 0;
  std::size_t pairs = 0;
};

/// Percentile of DTW distances between non-overlapping fixed-length probes
/// pooled from all trips.
RadiusEstimate estimate_radius(std::span<const TripRecording> trips, const RadiusOptions& options = {});

struct Candidate {
  SubseqRef ref;
  Series values;
};

/// Tries every candidate as the center. Members are a maximum-size set of
/// mutually non-overlapping candidates within `radius` that do not overlap
/// the center; among equal-size sets the smallest total distance wins.
/// Centers are ranked by member count, then mean member distance, then
/// input order. Returns nothing when no center has a member.
std::optional<Motif> get_motif(const Pattern& pattern, double radius,
                               std::span<const Candidate> candidates, const DtwConfig& config = {});

/// Runs the pattern-size loop from `min_pattern_size` until no word of the
/// current size repeats. Motifs are ordered by size, pattern, then first
/// occurrence, and numbered in that order.
std::vector<Motif> extract_motifs(std::span<const TripRecording> trips,
                                  std::span<const VsaxSequence> sequences, const SearchParams& params);

std::vector<Motif> extract_motifs(std::span<const TripRecording> trips, const SearchParams& params,
                                  const Breakpoints& breakpoints);

}  // namespace tripmd
