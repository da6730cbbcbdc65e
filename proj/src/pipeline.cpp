#include "tripmd/pipeline.hpp"

#include "csv.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace tripmd {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  for (const auto cell : csv::split(text)) out.emplace_back(cell);
  return out;
}

std::string absolute_text(const fs::path& p) { return p.empty() ? std::string() : fs::absolute(p).lexically_normal().string(); }

void ensure_dir(const fs::path& dir) {
  if (dir.empty()) throw Error(Errc::invalid_argument, "no output directory given");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create " + dir.string() + ": " + ec.message());
}

void write_trip_table(const fs::path& path, std::span<const TripRecording> trips) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << "trip_id,driver_id,route,behavior,samples\n";
  for (const auto& t : trips) {
    out << t.trip_id << ',' << t.driver_id << ',' << to_string(t.route) << ','
        << (t.behavior ? to_string(*t.behavior) : "") << ',' << t.length() << '\n';
  }
}

std::vector<TripMetadata> read_trip_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<TripMetadata> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::blank(line)) continue;
    const auto cells = csv::split(line);
    if (cells.size() != 5) throw Error(Errc::parse, path.string() + ":" + std::to_string(line_no) + ": expected 5 cells");
    TripMetadata row;
    row.trip_id = cells[0];
    row.driver_id = cells[1];
    row.route = parse_route(cells[2]).value_or(Route::other);
    if (!cells[3].empty()) row.behavior = parse_behavior(cells[3]);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Whether any word of size w occurs more than once; without one there is
// nothing to search and the radius is irrelevant.
bool has_repeated_word(std::span<const VsaxSequence> sequences, Index w) {
  std::set<std::string> seen;
  for (const auto& seq : sequences) {
    for (const auto& word : words(seq, w)) {
      if (!seen.insert(pattern_key(word.symbols)).second) return true;
    }
  }
  return false;
}

}  // namespace

Index RunConfig::letter_size() const {
  const Index size = seconds_to_samples(letter_seconds, target_rate());
  if (size < 1) throw Error(Errc::invalid_argument, "letter size rounds to zero samples");
  return size;
}

ExtractReport cmd_extract(const RunConfig& config) {
  if (!(config.input_rate_hz > 0.0)) throw Error(Errc::invalid_argument, "--input-rate is required and must be positive");
  if (config.min_pattern_size < 1) throw Error(Errc::invalid_argument, "minimum pattern size must be at least 1");
  const Index letter_size = config.letter_size();

  LoadOptions load;
  load.channels = config.channels;
  load.sample_rate_hz = config.input_rate_hz;
  auto trips = load_trips(config.trips_dir, config.metadata, load);
  if (!config.drivers.empty()) {
    std::erase_if(trips, [&](const TripRecording& t) {
      return std::find(config.drivers.begin(), config.drivers.end(), t.driver_id) == config.drivers.end();
    });
  }
  if (trips.empty()) throw Error(Errc::empty_input, "no trips selected from " + config.trips_dir.string());
  for (auto& trip : trips) {
    if (trip.channel_names != trips.front().channel_names) {
      throw Error(Errc::channel_mismatch, "trip " + trip.trip_id + " has different channels");
    }
    trip = downsample(trip, config.target_rate());
  }
  const auto& channel_names = trips.front().channel_names;

  const auto breakpoints = compute_breakpoints(trips);
  const auto sequences = encode(trips, letter_size, breakpoints);
  const auto stats = corpus_stats(sequences);

  ExtractReport report;
  report.trips = trips.size();
  report.letter_size = letter_size;
  report.letters = stats.letter_count;
  RadiusEstimate estimate;
  if (config.radius) {
    report.radius = *config.radius;
  } else {
    RadiusOptions options;
    options.percentile = config.radius_percentile;
    options.probe_seconds = config.probe_seconds;
    estimate = estimate_radius(trips, options);
    report.radius = estimate.radius;
    report.radius_estimated = true;
  }
  const bool searchable = has_repeated_word(sequences, config.min_pattern_size);
  if (searchable && !(report.radius > 0.0)) {
    throw Error(Errc::invalid_argument, "motif radius is " + io::format_number(report.radius) +
                                            "; pass a positive --radius");
  }

  SearchParams params;
  params.letter_size = letter_size;
  params.min_pattern_size = config.min_pattern_size;
  params.radius = report.radius;
  const auto motifs = searchable ? extract_motifs(trips, sequences, params) : std::vector<Motif>{};
  report.motifs = motifs.size();

  ensure_dir(config.out_dir);
  write_trip_table(config.out_dir / "trips.csv", trips);
  io::write_breakpoints(config.out_dir / "breakpoints.csv", breakpoints, channel_names);
  io::write_motifs(config.out_dir / "motifs.csv", config.out_dir / "centers.csv", motifs, channel_names);
  if (config.export_letters) {
    ensure_dir(config.out_dir / "letters");
    for (const auto& seq : sequences) {
      std::ofstream out(config.out_dir / "letters" / (seq.trip_id + ".csv"));
      write_letters(out, seq);
    }
  }

  io::Manifest manifest;
  manifest.set("extract", "trips", absolute_text(config.trips_dir));
  manifest.set("extract", "metadata", absolute_text(config.metadata));
  manifest.set("extract", "out", absolute_text(config.out_dir));
  manifest.set("extract", "channels", join(channel_names));
  if (!config.drivers.empty()) manifest.set("extract", "drivers", join(config.drivers));
  manifest.set("extract", "input-rate", config.input_rate_hz);
  manifest.set("extract", "target-rate", config.target_rate());
  manifest.set("extract", "letter-seconds", config.letter_seconds);
  manifest.set("extract", "min-pattern-size", static_cast<long long>(config.min_pattern_size));
  manifest.set("extract", "radius", report.radius);
  manifest.set("extract", "radius-percentile", config.radius_percentile);
  manifest.set("extract", "probe-seconds", config.probe_seconds);
  manifest.set("extract", "seed", static_cast<long long>(config.seed));
  manifest.set("extract", "export-letters", std::string(config.export_letters ? "true" : "false"));
  manifest.set("results", "trips", static_cast<long long>(report.trips));
  manifest.set("results", "channels", static_cast<long long>(channel_names.size()));
  manifest.set("results", "letter_size", static_cast<long long>(letter_size));
  manifest.set("results", "letters", static_cast<long long>(report.letters));
  manifest.set("results", "radius_estimated", std::string(report.radius_estimated ? "true" : "false"));
  if (report.radius_estimated) {
    manifest.set("results", "radius_probes", static_cast<long long>(estimate.probes));
    manifest.set("results", "radius_pairs", static_cast<long long>(estimate.pairs));
  }
  manifest.set("results", "motifs", static_cast<long long>(report.motifs));
  manifest.set("results", "seconds_to_samples", std::string("round_half_up"));
  manifest.write(config.out_dir / "extract_manifest.ini");
  return report;
}

SummarizeReport cmd_summarize(const RunConfig& config) {
  const fs::path in = config.input_dir;
  const auto extract = io::Manifest::read(in / "extract_manifest.ini");
  auto motifs = io::read_motifs(in / "motifs.csv", in / "centers.csv");
  if (motifs.empty()) throw Error(Errc::nothing_to_summarize, "no motifs in " + (in / "motifs.csv").string());

  const auto channel_names = split_list(extract.get("extract", "channels"));
  const double rate = extract.get_number("extract", "target-rate");
  const double radius = extract.get_number("extract", "radius");
  const auto letter_size = static_cast<Index>(extract.get_number("results", "letter_size"));
  CorpusStats corpus;
  corpus.letter_count = static_cast<Index>(extract.get_number("results", "letters"));
  corpus.channels = static_cast<Index>(channel_names.size());

  const Index window = config.dtw_window_seconds ? seconds_to_samples(*config.dtw_window_seconds, rate) : letter_size;
  const DtwConfig som_dtw{window};

  const auto ranked = rank_motifs(motifs, corpus);
  const auto anchors = prune(ranked, radius);
  auto grid = init_anchor(anchors, motifs, config.seed);
  TrainOptions train_options;
  train_options.epochs = config.epochs;
  train_options.dtw = som_dtw;
  train_options.seed = config.seed;
  grid = train(std::move(grid), motifs, train_options);
  const auto assignment = assign(grid, motifs, som_dtw);

  const fs::path out = config.out_dir.empty() ? in : config.out_dir;
  ensure_dir(out);
  io::write_ranked(out / "ranked.csv", ranked);
  io::write_anchors(out / "anchors.csv", anchors, ranked);
  io::write_prototypes(out / "prototypes.csv", grid, channel_names);
  io::write_matrix(out / "u_matrix.csv", u_matrix(grid, som_dtw));
  io::write_matrix(out / "winner_matrix.csv", winner_matrix(assignment, grid));
  io::write_assignments(out / "assignments.csv", motifs, assignment);

  SummarizeReport report;
  report.motifs = motifs.size();
  report.anchors = anchors.size();
  report.grid_side = grid.rows;
  report.dtw_window = window;

  io::Manifest manifest;
  manifest.set("summarize", "in", absolute_text(in));
  manifest.set("summarize", "out", absolute_text(out));
  manifest.set("summarize", "epochs", static_cast<long long>(config.epochs));
  manifest.set("summarize", "dtw-window-seconds", static_cast<double>(window) / rate);
  manifest.set("summarize", "seed", static_cast<long long>(config.seed));
  manifest.set("results", "extract_dir", absolute_text(in));
  manifest.set("results", "motifs", static_cast<long long>(report.motifs));
  manifest.set("results", "anchors", static_cast<long long>(report.anchors));
  manifest.set("results", "grid_side", static_cast<long long>(report.grid_side));
  manifest.set("results", "dtw_window_samples", static_cast<long long>(window));
  manifest.write(out / "summarize_manifest.ini");
  return report;
}

AnalyzeReport cmd_analyze(const RunConfig& config) {
  const fs::path in = config.input_dir;
  const auto summary = io::Manifest::read(in / "summarize_manifest.ini");
  const fs::path extract_dir = summary.get("results", "extract_dir");
  const auto motifs = io::read_motifs(extract_dir / "motifs.csv", extract_dir / "centers.csv");
  const auto grid = io::read_prototypes(in / "prototypes.csv");
  const auto assignment = io::read_assignments(in / "assignments.csv", motifs);

  // Trips of the run, relabelled from the metadata file when one is given.
  auto trips = read_trip_table(extract_dir / "trips.csv");
  if (!config.metadata.empty()) {
    std::map<std::string, TripMetadata> labels;
    for (auto& row : read_metadata(config.metadata)) {
      auto id = row.trip_id;
      labels.emplace(std::move(id), std::move(row));
    }
    for (auto& t : trips) {
      const auto it = labels.find(t.trip_id);
      if (it == labels.end()) throw Error(Errc::missing_metadata, "no metadata row for trip " + t.trip_id);
      t = it->second;
    }
  }

  if (config.test_driver.empty()) throw Error(Errc::invalid_argument, "--test-driver is required");
  std::map<std::string, Behavior> training;
  std::vector<std::string> test_trips;
  AnalyzeReport report;
  std::set<std::string> known;
  for (const auto& t : trips) {
    known.insert(t.trip_id);
    if (t.driver_id == config.test_driver) {
      test_trips.push_back(t.trip_id);
      report.truth[t.trip_id] = t.behavior;
    } else if (!t.behavior) {
      throw Error(Errc::unlabeled_trip, "training trip " + t.trip_id + " has no behavior label");
    } else {
      training.emplace(t.trip_id, *t.behavior);
    }
  }
  if (test_trips.empty()) throw Error(Errc::unknown_driver, "driver " + config.test_driver + " has no trips in this run");

  const auto counts = subsequence_counts(assignment, motifs, known);
  report.rates = cluster_rates(counts, grid.size(), training);
  for (const auto& trip : test_trips) {
    report.scores.push_back(trip_scores(report.rates, trip_unit_counts(counts, grid.size(), trip), trip));
  }
  if (config.bootstrap > 0) {
    BootstrapContext context{motifs, &assignment, grid.size(), training, test_trips};
    report.bootstrap = bootstrap_scores(context, config.bootstrap, config.seed);
  }

  const fs::path out = config.out_dir.empty() ? in : config.out_dir;
  ensure_dir(out);
  {
    std::ofstream f(out / "counts.csv");
    f << "unit,trip_id,count\n";
    for (const auto& [key, n] : counts) f << key.first << ',' << key.second << ',' << n << '\n';
  }
  {
    std::ofstream f(out / "rates.csv");
    f << "unit,n,aggressive,drowsy,normal\n";
    for (Index u = 0; u < report.rates.units(); ++u) {
      f << u << ',' << io::format_number(report.rates.totals(u));
      for (int b = 0; b < kBehaviorCount; ++b) f << ',' << io::format_number(report.rates.rates(u, b));
      f << '\n';
    }
  }
  std::map<std::string, Route> routes;
  for (const auto& t : trips) routes[t.trip_id] = t.route;
  {
    std::ofstream f(out / "scores.csv");
    f << "trip_id,route,behavior,aggressive,drowsy,normal,predicted,flag\n";
    for (const auto& s : report.scores) {
      const auto& truth = report.truth.at(s.trip_id);
      f << s.trip_id << ',' << to_string(routes.at(s.trip_id)) << ',' << (truth ? to_string(*truth) : "");
      for (int b = 0; b < kBehaviorCount; ++b) f << ',' << io::format_number(s.scores(b));
      f << ',' << (s.predicted ? to_string(*s.predicted) : "indeterminate") << ','
        << (s.tie ? "tie" : (s.predicted ? "" : "no_evidence")) << '\n';
    }
  }
  if (!report.bootstrap.empty()) {
    std::ofstream f(out / "bootstrap.csv");
    f << "trip_id,behavior,mean,std\n";
    for (const auto& s : report.bootstrap) {
      for (int b = 0; b < kBehaviorCount; ++b) {
        f << s.trip_id << ',' << to_string(static_cast<Behavior>(b)) << ',' << io::format_number(s.mean(b)) << ','
          << io::format_number(s.stddev(b)) << '\n';
      }
    }
  }

  io::Manifest manifest;
  manifest.set("analyze", "in", absolute_text(in));
  manifest.set("analyze", "out", absolute_text(out));
  manifest.set("analyze", "metadata", absolute_text(config.metadata));
  manifest.set("analyze", "test-driver", config.test_driver);
  manifest.set("analyze", "bootstrap", static_cast<long long>(config.bootstrap));
  manifest.set("analyze", "seed", static_cast<long long>(config.seed));
  manifest.set("results", "test_trips", static_cast<long long>(test_trips.size()));
  manifest.set("results", "training_trips", static_cast<long long>(training.size()));
  long long correct = 0;
  for (const auto& s : report.scores) {
    if (s.predicted && report.truth.at(s.trip_id) == s.predicted) ++correct;
  }
  manifest.set("results", "correct_predictions", correct);
  manifest.write(out / "analyze_manifest.ini");
  return report;
}

}  // namespace tripmd
