#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tripmd {

using Index = Eigen::Index;

/// A multichannel series: one row per time step, one column per channel.
template <typename Scalar>
using SeriesT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Series = SeriesT<double>;

enum class Errc {
  invalid_argument,
  parse,
  empty_file,
  missing_metadata,
  rate_ratio,
  out_of_range,
  empty_input,
  trip_too_short,
  channel_mismatch,
  window_too_small,
  too_few_probes,
  empty_anchors,
  unknown_trip,
  unknown_driver,
  unlabeled_trip,
  nothing_to_summarize,
  io,
};

std::string_view errc_name(Errc code) noexcept;

/// Validation errors are caused by user input or configuration; the
/// remaining codes are runtime failures of a stage.
bool is_validation_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Column order follows the score tables: aggressive, drowsy, normal. Lower
// index wins prediction ties.
enum class Behavior : int { aggressive = 0, drowsy = 1, normal = 2 };
inline constexpr int kBehaviorCount = 3;

enum class Route { motorway, secondary, other };

std::string_view to_string(Behavior b) noexcept;
std::string_view to_string(Route r) noexcept;
std::optional<Behavior> parse_behavior(std::string_view text);
std::optional<Route> parse_route(std::string_view text);

/// Seconds to samples, rounding halves up.
Index seconds_to_samples(double seconds, double rate_hz);

}  // namespace tripmd
