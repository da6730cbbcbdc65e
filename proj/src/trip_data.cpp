#include "tripmd/trip_data.hpp"

#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace tripmd {

namespace fs = std::filesystem;

bool overlap(const SubseqRef& a, const SubseqRef& b) noexcept {
  return a.trip_id == b.trip_id && a.start < b.end && b.start < a.end;
}

void TripRecording::validate() const {
  if (trip_id.empty() || trip_id.find_first_of(",:|") != std::string::npos) {
    throw Error(Errc::invalid_argument, "trip id '" + trip_id + "' is empty or contains one of ,:|");
  }
  if (samples.rows() < 1 || samples.cols() < 1) {
    throw Error(Errc::invalid_argument, "trip " + trip_id + " has no samples or no channels");
  }
  if (static_cast<Index>(channel_names.size()) != samples.cols()) {
    throw Error(Errc::invalid_argument, "trip " + trip_id + " channel names do not match columns");
  }
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(Errc::invalid_argument, "trip " + trip_id + " sample rate must be positive");
  }
  if (!samples.allFinite()) {
    throw Error(Errc::invalid_argument, "trip " + trip_id + " contains non-finite samples");
  }
}

std::vector<TripMetadata> read_metadata(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open metadata file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::empty_file, path.string());
  const auto header = csv::split(line);
  const std::vector<std::string_view> expected{"trip_id", "driver_id", "route", "behavior"};
  if (header != expected) {
    throw Error(Errc::parse, path.string() + ":1: expected header trip_id,driver_id,route,behavior");
  }

  std::vector<TripMetadata> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::blank(line)) continue;
    const auto cells = csv::split(line);
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != 4) throw Error(Errc::parse, where + ": expected 4 cells");
    TripMetadata row;
    row.trip_id = cells[0];
    row.driver_id = cells[1];
    if (row.trip_id.empty() || row.driver_id.empty()) {
      throw Error(Errc::parse, where + ": trip_id and driver_id are required");
    }
    const auto route = parse_route(cells[2]);
    if (!route) throw Error(Errc::parse, where + ": unknown route '" + std::string(cells[2]) + "'");
    row.route = *route;
    if (!cells[3].empty()) {
      row.behavior = parse_behavior(cells[3]);
      if (!row.behavior) {
        throw Error(Errc::parse, where + ": unknown behavior '" + std::string(cells[3]) + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

TripRecording read_trip_file(const fs::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open trip file " + path.string());

  std::string line;
  if (!std::getline(in, line) || csv::blank(line)) throw Error(Errc::empty_file, path.string());
  const auto header = csv::split(line);
  if (header.empty() || header[0] != "timestamp") {
    throw Error(Errc::parse, path.string() + ":1: first column must be 'timestamp'");
  }

  TripRecording trip;
  trip.trip_id = path.stem().string();
  trip.sample_rate_hz = options.sample_rate_hz;

  std::vector<std::size_t> columns;
  if (options.channels.empty()) {
    for (std::size_t c = 1; c < header.size(); ++c) {
      columns.push_back(c);
      trip.channel_names.emplace_back(header[c]);
    }
  } else {
    for (const auto& name : options.channels) {
      const auto it = std::find(header.begin() + 1, header.end(), name);
      if (it == header.end()) {
        throw Error(Errc::parse, path.string() + ":1: missing channel column '" + name + "'");
      }
      columns.push_back(static_cast<std::size_t>(it - header.begin()));
      trip.channel_names.push_back(name);
    }
  }
  if (columns.empty()) throw Error(Errc::parse, path.string() + ":1: no channel columns");

  std::vector<double> values;
  Index rows = 0;
  double last_timestamp = 0.0;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::blank(line)) continue;
    const auto cells = csv::split(line);
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != header.size()) {
      throw Error(Errc::parse, where + ": expected " + std::to_string(header.size()) + " cells");
    }
    const auto ts = csv::to_double(cells[0]);
    if (!ts) throw Error(Errc::parse, where + ": malformed timestamp '" + std::string(cells[0]) + "'");
    if (rows > 0 && !(*ts > last_timestamp)) {
      throw Error(Errc::parse, where + ": timestamps must be strictly increasing");
    }
    last_timestamp = *ts;
    for (const auto c : columns) {
      const auto v = csv::to_double(cells[c]);
      if (!v) throw Error(Errc::parse, where + ": malformed number '" + std::string(cells[c]) + "'");
      if (!std::isfinite(*v)) throw Error(Errc::parse, where + ": non-finite value");
      values.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw Error(Errc::empty_file, path.string() + " has no samples");

  const auto d = static_cast<Index>(columns.size());
  trip.samples = Eigen::Map<const Series>(values.data(), rows, d);
  return trip;
}

std::vector<TripRecording> load_trips(const fs::path& directory, const fs::path& metadata_path,
                                      const LoadOptions& options) {
  if (!fs::is_directory(directory)) {
    throw Error(Errc::io, "trip directory " + directory.string() + " does not exist");
  }
  std::map<std::string, TripMetadata> metadata;
  for (auto& row : read_metadata(metadata_path)) {
    auto id = row.trip_id;
    metadata.emplace(std::move(id), std::move(row));
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<TripRecording> trips;
  trips.reserve(files.size());
  for (const auto& file : files) {
    const auto it = metadata.find(file.stem().string());
    if (it == metadata.end()) {
      throw Error(Errc::missing_metadata, "no metadata row for trip file " + file.string());
    }
    auto trip = read_trip_file(file, options);
    trip.driver_id = it->second.driver_id;
    trip.route = it->second.route;
    trip.behavior = it->second.behavior;
    trip.validate();
    trips.push_back(std::move(trip));
  }
  return trips;
}

TripRecording downsample(const TripRecording& trip, double target_hz) {
  if (!(target_hz > 0.0)) throw Error(Errc::invalid_argument, "target rate must be positive");
  const double ratio = trip.sample_rate_hz / target_hz;
  const double factor_r = std::round(ratio);
  if (factor_r < 1.0 || std::abs(ratio - factor_r) > 1e-9 * std::max(1.0, ratio)) {
    throw Error(Errc::rate_ratio, "sample rate " + csv::format(trip.sample_rate_hz) +
                                      " Hz is not an integer multiple of " + csv::format(target_hz) +
                                      " Hz");
  }
  const auto factor = static_cast<Index>(factor_r);

  TripRecording out = trip;
  out.sample_rate_hz = target_hz;
  if (factor == 1) return out;

  const Index blocks = trip.length() / factor;
  if (blocks < 1) {
    throw Error(Errc::trip_too_short, "trip " + trip.trip_id + " is shorter than one block");
  }
  out.samples.resize(blocks, trip.channels());
  for (Index k = 0; k < blocks; ++k) {
    out.samples.row(k) = trip.samples.middleRows(k * factor, factor).colwise().mean();
  }
  return out;
}

Series slice(const TripRecording& trip, const SubseqRef& ref) {
  if (ref.trip_id != trip.trip_id) {
    throw Error(Errc::out_of_range, "ref for trip " + ref.trip_id + " applied to " + trip.trip_id);
  }
  if (ref.start < 0 || ref.end > trip.length() || ref.start >= ref.end) {
    throw Error(Errc::out_of_range, "[" + std::to_string(ref.start) + "," + std::to_string(ref.end) +
                                        ") is outside trip " + trip.trip_id + " of length " +
                                        std::to_string(trip.length()));
  }
  return trip.samples.middleRows(ref.start, ref.length());
}

}  // namespace tripmd
