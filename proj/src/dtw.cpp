#include "tripmd/dtw.hpp"

#include <string>

namespace tripmd {

void detail::check_dtw_args(Index la, Index lb, Index da, Index db, const DtwConfig& config) {
  if (la < 1 || lb < 1) throw Error(Errc::invalid_argument, "dtw needs non-empty sequences");
  if (da != db) {
    throw Error(Errc::channel_mismatch,
                "dtw over " + std::to_string(da) + " and " + std::to_string(db) + " channels");
  }
  if (config.window) {
    if (*config.window < 0) throw Error(Errc::invalid_argument, "negative warping window");
    if (*config.window < std::abs(la - lb)) {
      throw Error(Errc::window_too_small, "window " + std::to_string(*config.window) +
                                              " cannot align lengths " + std::to_string(la) +
                                              " and " + std::to_string(lb));
    }
  }
}

Eigen::MatrixXd pairwise_dtw(std::span<const Series> items, const DtwConfig& config) {
  if (items.empty()) throw Error(Errc::empty_input, "pairwise dtw of no items");
  const auto n = static_cast<Index>(items.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      try {
        out(i, j) = dtw(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)], config);
      } catch (const Error& e) {
        throw Error(e.code(), "pair (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
      }
      out(j, i) = out(i, j);
    }
  }
  return out;
}

}  // namespace tripmd
