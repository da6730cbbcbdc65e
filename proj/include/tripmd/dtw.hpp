#pragma once

#include "tripmd/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tripmd {

struct DtwConfig {
  /// Maximum |i - j| on the alignment path; empty means unconstrained.
  std::optional<Index> window;

  friend bool operator==(const DtwConfig&, const DtwConfig&) = default;
};

/// Widens the window to |la - lb| when it is too narrow for a path to exist.
inline DtwConfig fit_window(const DtwConfig& config, Index la, Index lb) {
  if (!config.window) return config;
  return DtwConfig{std::max(*config.window, std::abs(la - lb))};
}

namespace detail {

void check_dtw_args(Index la, Index lb, Index da, Index db, const DtwConfig& config);

template <typename A, typename B>
double local_cost(const Eigen::MatrixBase<A>& a, Index i, const Eigen::MatrixBase<B>& b, Index j) {
  return (a.row(i) - b.row(j)).norm();
}

inline Index band_width(const DtwConfig& config, Index la, Index lb) {
  return config.window ? *config.window : std::max(la, lb);
}

}  // namespace detail

/// Dependent multivariate DTW: one alignment for all channels, local cost is
/// the Euclidean norm of the point difference, steps (1,0), (0,1), (1,1).
template <typename A, typename B>
double dtw(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, const DtwConfig& config = {}) {
  const Index la = a.rows();
  const Index lb = b.rows();
  detail::check_dtw_args(la, lb, a.cols(), b.cols(), config);
  const Index w = detail::band_width(config, la, lb);

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Row i of the cumulative matrix, 1-based with a border column at 0.
  std::vector<double> prev(static_cast<std::size_t>(lb + 1), inf);
  std::vector<double> curr(static_cast<std::size_t>(lb + 1), inf);
  prev[0] = 0.0;
  for (Index i = 1; i <= la; ++i) {
    std::fill(curr.begin(), curr.end(), inf);
    const Index j_lo = std::max<Index>(1, i - w);
    const Index j_hi = std::min<Index>(lb, i + w);
    for (Index j = j_lo; j <= j_hi; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double best = std::min({prev[ju - 1], prev[ju], curr[ju - 1]});
      curr[ju] = detail::local_cost(a, i - 1, b, j - 1) + best;
    }
    std::swap(prev, curr);
  }
  return prev[static_cast<std::size_t>(lb)];
}

struct DtwAlignment {
  double distance = 0.0;
  /// (index into a, index into b) pairs from (0,0) to (la-1, lb-1).
  std::vector<std::pair<Index, Index>> path;
};

/// Same distance as dtw() plus one optimal warping path. Backtracking
/// prefers the diagonal step, then the step in a, then the step in b.
template <typename A, typename B>
DtwAlignment dtw_align(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                       const DtwConfig& config = {}) {
  const Index la = a.rows();
  const Index lb = b.rows();
  detail::check_dtw_args(la, lb, a.cols(), b.cols(), config);
  const Index w = detail::band_width(config, la, lb);

  constexpr double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Constant(la + 1, lb + 1, inf);
  acc(0, 0) = 0.0;
  for (Index i = 1; i <= la; ++i) {
    const Index j_lo = std::max<Index>(1, i - w);
    const Index j_hi = std::min<Index>(lb, i + w);
    for (Index j = j_lo; j <= j_hi; ++j) {
      const double best = std::min({acc(i - 1, j - 1), acc(i - 1, j), acc(i, j - 1)});
      acc(i, j) = detail::local_cost(a, i - 1, b, j - 1) + best;
    }
  }

  DtwAlignment out;
  out.distance = acc(la, lb);
  Index i = la;
  Index j = lb;
  while (i > 0 && j > 0) {
    out.path.emplace_back(i - 1, j - 1);
    const double diag = acc(i - 1, j - 1);
    const double up = acc(i - 1, j);
    const double left = acc(i, j - 1);
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

/// Symmetric matrix of dtw() over all pairs. Errors name the offending pair.
Eigen::MatrixXd pairwise_dtw(std::span<const Series> items, const DtwConfig& config = {});

}  // namespace tripmd
