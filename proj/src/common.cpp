#include "tripmd/common.hpp"

#include <cmath>

namespace tripmd {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::parse: return "parse error";
    case Errc::empty_file: return "empty file";
    case Errc::missing_metadata: return "missing metadata";
    case Errc::rate_ratio: return "non-integer rate ratio";
    case Errc::out_of_range: return "range error";
    case Errc::empty_input: return "empty input";
    case Errc::trip_too_short: return "trip too short";
    case Errc::channel_mismatch: return "channel mismatch";
    case Errc::window_too_small: return "warping window too small";
    case Errc::too_few_probes: return "too few probes";
    case Errc::empty_anchors: return "empty anchors";
    case Errc::unknown_trip: return "unknown trip";
    case Errc::unknown_driver: return "unknown driver";
    case Errc::unlabeled_trip: return "unlabeled trip";
    case Errc::nothing_to_summarize: return "nothing to summarize";
    case Errc::io: return "i/o error";
  }
  return "error";
}

bool is_validation_error(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::rate_ratio:
    case Errc::unknown_driver:
    case Errc::unlabeled_trip:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(Behavior b) noexcept {
  switch (b) {
    case Behavior::aggressive: return "aggressive";
    case Behavior::drowsy: return "drowsy";
    case Behavior::normal: return "normal";
  }
  return "";
}

std::string_view to_string(Route r) noexcept {
  switch (r) {
    case Route::motorway: return "motorway";
    case Route::secondary: return "secondary";
    case Route::other: return "other";
  }
  return "";
}

std::optional<Behavior> parse_behavior(std::string_view text) {
  if (text == "normal") return Behavior::normal;
  if (text == "aggressive") return Behavior::aggressive;
  if (text == "drowsy") return Behavior::drowsy;
  return std::nullopt;
}

std::optional<Route> parse_route(std::string_view text) {
  if (text == "motorway") return Route::motorway;
  if (text == "secondary") return Route::secondary;
  if (text == "other") return Route::other;
  return std::nullopt;
}

Index seconds_to_samples(double seconds, double rate_hz) {
  if (!(seconds > 0.0) || !(rate_hz > 0.0)) {
    throw Error(Errc::invalid_argument, "seconds and rate must be positive");
  }
  return static_cast<Index>(std::floor(seconds * rate_hz + 0.5));
}

}  // namespace tripmd
