#pragma once

#include "tripmd/dtw_som.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tripmd {

/// (unit, trip_id) -> number of motif subsequences.
using OccurrenceCounts = std::map<std::pair<Index, std::string>, Index>;

/// Tallies every occurrence (center and members) of every motif toward the
/// motif's unit and the occurrence's own trip. `multiplicity`, when given,
/// weights motif k by multiplicity[k].
OccurrenceCounts subsequence_counts(const Assignment& assignment, std::span<const Motif> motifs,
                                    const std::set<std::string>& known_trips,
                                    std::span<const Index> multiplicity = {});

struct ClusterBehaviorRates {
  /// units x behaviors, columns in Behavior order.
  Eigen::MatrixXd rates;
  /// Training subsequences per unit (n_i).
  Eigen::VectorXd totals;

  Index units() const noexcept { return rates.rows(); }
};

/// r_ib = n_ib / n_i over training trips only; all zero where n_i = 0.
ClusterBehaviorRates cluster_rates(const OccurrenceCounts& counts, Index unit_count,
                                   const std::map<std::string, Behavior>& training_trips);

/// Per-unit subsequence counts of one trip.
Eigen::VectorXd trip_unit_counts(const OccurrenceCounts& counts, Index unit_count, const std::string& trip_id);

struct BehaviorScore {
  std::string trip_id;
  /// Indexed by Behavior.
  Eigen::Vector3d scores = Eigen::Vector3d::Zero();
  /// Empty when the trip has no evidence.
  std::optional<Behavior> predicted;
  /// Set when more than one behavior shares the top score.
  bool tie = false;
};

BehaviorScore trip_scores(const ClusterBehaviorRates& rates, const Eigen::VectorXd& test_counts,
                          std::string trip_id = {});

struct BootstrapContext {
  std::span<const Motif> motifs;
  const Assignment* assignment = nullptr;
  Index unit_count = 0;
  std::map<std::string, Behavior> training_trips;
  std::vector<std::string> test_trips;
};

struct BootstrapStats {
  std::string trip_id;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  /// Population standard deviation over rounds.
  Eigen::Vector3d stddev = Eigen::Vector3d::Zero();
};

/// Returns, for one round, how many times each motif was drawn.
using Resampler = std::function<std::vector<Index>(std::size_t round, std::size_t motif_count)>;

/// Each round draws |motifs| motifs with replacement from a stream derived
/// from (seed, round); units stay fixed.
std::vector<BootstrapStats> bootstrap_scores(const BootstrapContext& context, std::size_t samples,
                                             std::uint64_t seed);

std::vector<BootstrapStats> bootstrap_scores(const BootstrapContext& context, std::size_t samples,
                                             const Resampler& resampler);

}  // namespace tripmd
