#pragma once

#include "tripmd/trip_data.hpp"
#include "tripmd/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace tripmd::testing {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("tripmd_" + tag + "_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path) << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline TripRecording make_trip(const std::string& id, const Series& samples, double rate = 5.0,
                               std::optional<Behavior> behavior = std::nullopt, const std::string& driver = "D1") {
  TripRecording t;
  t.trip_id = id;
  t.driver_id = driver;
  t.behavior = behavior;
  t.sample_rate_hz = rate;
  t.samples = samples;
  for (Index c = 0; c < samples.cols(); ++c) t.channel_names.push_back("ch" + std::to_string(c));
  return t;
}

inline double uniform(Rng& rng, double lo, double hi) {
  // 53 random bits mapped to [0, 1).
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline Series random_series(Rng& rng, Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
  Series s(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) s(r, c) = uniform(rng, lo, hi);
  return s;
}

/// Textbook DTW recursion over the full matrix; cells outside the band are
/// unreachable.
inline double dtw_oracle(const Series& a, const Series& b, Index window = -1) {
  const Index n = a.rows(), m = b.rows();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd D = Eigen::MatrixXd::Constant(n, m, inf);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (window >= 0 && std::abs(i - j) > window) continue;
      double cost = 0.0;
      for (Index c = 0; c < a.cols(); ++c) cost += (a(i, c) - b(j, c)) * (a(i, c) - b(j, c));
      cost = std::sqrt(cost);
      double prev = 0.0;
      if (i > 0 || j > 0) {
        prev = inf;
        if (i > 0) prev = std::min(prev, D(i - 1, j));
        if (j > 0) prev = std::min(prev, D(i, j - 1));
        if (i > 0 && j > 0) prev = std::min(prev, D(i - 1, j - 1));
      }
      D(i, j) = cost + prev;
    }
  }
  return D(n - 1, m - 1);
}

inline Series column(std::initializer_list<double> values) {
  Series s(static_cast<Index>(values.size()), 1);
  Index r = 0;
  for (double v : values) s(r++, 0) = v;
  return s;
}

}  // namespace tripmd::testing
