#include "tripmd/dtw_som.hpp"

#include "tripmd/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tripmd {

namespace {

double fitted_dtw(const Series& a, const Series& b, const DtwConfig& config) {
  return dtw(a, b, fit_window(config, a.rows(), b.rows()));
}

double lerp(double from, double to, double t) { return from + (to - from) * t; }

}  // namespace

SomGrid init_anchor(std::span<const Motif> anchors, std::span<const Motif> all_motifs, std::uint64_t seed) {
  if (anchors.empty()) throw Error(Errc::empty_anchors, "anchor initialization needs at least one anchor");

  SomGrid grid;
  const auto count = static_cast<Index>(anchors.size());
  Index side = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(count))));
  while (side * side < count) ++side;
  while (side > 1 && (side - 1) * (side - 1) >= count) --side;
  grid.rows = side;
  grid.cols = side;
  grid.units.reserve(static_cast<std::size_t>(grid.size()));
  for (const auto& a : anchors) grid.units.push_back(a.center_values);

  std::vector<const Motif*> pool;
  for (const auto& m : all_motifs) {
    const bool is_anchor = std::any_of(anchors.begin(), anchors.end(),
                                       [&](const Motif& a) { return a.center == m.center && a.pattern == m.pattern; });
    if (!is_anchor) pool.push_back(&m);
  }
  auto rng = make_rng(seed);
  shuffle(std::span(pool), rng);

  std::size_t next_pool = 0;
  std::size_t next_anchor = 0;
  while (static_cast<Index>(grid.units.size()) < grid.size()) {
    if (next_pool < pool.size()) {
      grid.units.push_back(pool[next_pool++]->center_values);
    } else {
      grid.units.push_back(anchors[next_anchor++ % anchors.size()].center_values);
    }
  }
  return grid;
}

Index best_matching_unit(const SomGrid& grid, const Series& x, const DtwConfig& config) {
  Index best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (Index u = 0; u < grid.size(); ++u) {
    const double d = fitted_dtw(x, grid.unit(u), config);
    if (d < best_distance) {
      best_distance = d;
      best = u;
    }
  }
  return best;
}

SomGrid train(SomGrid grid, std::span<const Motif> motifs, const TrainOptions& options) {
  if (options.epochs < 1) throw Error(Errc::invalid_argument, "training needs at least one epoch");
  if (motifs.empty() || grid.size() == 0) return grid;

  const double sigma_start = options.sigma_start.value_or(static_cast<double>(std::max(grid.rows, grid.cols)) / 2.0);
  const auto steps = static_cast<Index>(motifs.size()) * options.epochs;
  std::vector<std::size_t> order(motifs.size());
  Index step = 0;
  for (Index epoch = 0; epoch < options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rng = make_rng(options.seed, static_cast<std::uint64_t>(epoch));
    shuffle(std::span(order), rng);

    for (const auto k : order) {
      const double progress = steps > 1 ? static_cast<double>(step) / static_cast<double>(steps - 1) : 0.0;
      ++step;
      const double rate = lerp(options.learning_rate_start, options.learning_rate_end, progress);
      const double sigma = std::max(lerp(sigma_start, options.sigma_end, progress), 1e-12);
      if (rate == 0.0) continue;

      const Series& x = motifs[k].center_values;
      const Index bmu = best_matching_unit(grid, x, options.dtw);
      const Index bmu_row = bmu / grid.cols;
      const Index bmu_col = bmu % grid.cols;
      for (Index u = 0; u < grid.size(); ++u) {
        const double dr = static_cast<double>(u / grid.cols - bmu_row);
        const double dc = static_cast<double>(u % grid.cols - bmu_col);
        const double h = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
        const double gain = rate * h;
        if (gain == 0.0) continue;

        Series& p = grid.units[static_cast<std::size_t>(u)];
        const auto alignment = dtw_align(x, p, fit_window(options.dtw, x.rows(), p.rows()));
        Series target = Series::Zero(p.rows(), p.cols());
        Eigen::VectorXd hits = Eigen::VectorXd::Zero(p.rows());
        for (const auto& [i, t] : alignment.path) {
          target.row(t) += x.row(i);
          hits(t) += 1.0;
        }
        for (Index t = 0; t < p.rows(); ++t) {
          p.row(t) += gain * (target.row(t) / hits(t) - p.row(t));
        }
      }
    }
  }
  return grid;
}

Assignment assign(const SomGrid& grid, std::span<const Motif> motifs, const DtwConfig& config) {
  Assignment out;
  out.unit_of.reserve(motifs.size());
  for (const auto& m : motifs) out.unit_of.push_back(best_matching_unit(grid, m.center_values, config));
  return out;
}

Eigen::MatrixXd u_matrix(const SomGrid& grid, const DtwConfig& config) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(grid.rows, grid.cols);
  for (Index r = 0; r < grid.rows; ++r) {
    for (Index c = 0; c < grid.cols; ++c) {
      const Series& here = grid.unit(grid.unit_index(r, c));
      double sum = 0.0;
      int neighbours = 0;
      const auto visit = [&](Index rr, Index cc) {
        if (rr < 0 || cc < 0 || rr >= grid.rows || cc >= grid.cols) return;
        sum += fitted_dtw(here, grid.unit(grid.unit_index(rr, cc)), config);
        ++neighbours;
      };
      visit(r - 1, c);
      visit(r + 1, c);
      visit(r, c - 1);
      visit(r, c + 1);
      out(r, c) = neighbours > 0 ? sum / neighbours : 0.0;
    }
  }
  return out;
}

Eigen::MatrixXi winner_matrix(const Assignment& assignment, const SomGrid& grid) {
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(grid.rows, grid.cols);
  for (const auto u : assignment.unit_of) {
    if (u < 0 || u >= grid.size()) throw Error(Errc::out_of_range, "assignment to unit " + std::to_string(u));
    out(u / grid.cols, u % grid.cols) += 1;
  }
  return out;
}

}  // namespace tripmd
