#pragma once

#include "tripmd/motif_search.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tripmd {

/// Square lattice of variable-length prototypes, indexed row-major.
struct SomGrid {
  Index rows = 0;
  Index cols = 0;
  std::vector<Series> units;

  Index size() const noexcept { return rows * cols; }
  Index unit_index(Index row, Index col) const noexcept { return row * cols + col; }
  const Series& unit(Index index) const { return units.at(static_cast<std::size_t>(index)); }
};

/// Side = ceil(sqrt(|anchors|)). Units 0..|anchors|-1 copy the anchor
/// centers in order; the rest take seeded draws from the non-anchor motifs
/// and fall back to cycling through the anchors.
SomGrid init_anchor(std::span<const Motif> anchors, std::span<const Motif> all_motifs, std::uint64_t seed);

struct TrainOptions {
  Index epochs = 20;
  double learning_rate_start = 0.5;
  double learning_rate_end = 0.01;
  /// Gaussian neighbourhood radius in grid units; start defaults to
  /// max(rows, cols) / 2.
  std::optional<double> sigma_start;
  double sigma_end = 1.0;
  DtwConfig dtw;
  std::uint64_t seed = 0;
};

/// Online SOM under DTW. Per visited motif center x the BMU is found, then
/// every unit p moves toward the DTW-aligned average of x:
/// p(t) += lr * h * (mean of x aligned to t - p(t)). Prototype lengths stay
/// fixed. Windows too narrow for a pair are widened to the length gap.
SomGrid train(SomGrid grid, std::span<const Motif> motifs, const TrainOptions& options);

/// Lowest index wins ties.
Index best_matching_unit(const SomGrid& grid, const Series& x, const DtwConfig& config);

struct Assignment {
  /// unit_of[k] is the unit of the k-th motif passed to assign().
  std::vector<Index> unit_of;
};

Assignment assign(const SomGrid& grid, std::span<const Motif> motifs, const DtwConfig& config);

/// Mean DTW distance from each unit to its 4-connected neighbours.
Eigen::MatrixXd u_matrix(const SomGrid& grid, const DtwConfig& config);

Eigen::MatrixXi winner_matrix(const Assignment& assignment, const SomGrid& grid);

}  // namespace tripmd
