#include "tripmd/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

template <typename T>
void optional_value(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tripmd;
  RunConfig config;

  CLI::App app{"Motif discovery and behavior scoring for trip acceleration data"};
  app.set_config("--config", "", "Replay the parameters of a manifest written by an earlier run");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract", "Encode trips and extract motifs");
  extract->fallthrough();
  extract->add_option("--trips", config.trips_dir, "Directory of per-trip CSV files")->required();
  extract->add_option("--metadata", config.metadata, "trip_id,driver_id,route,behavior table")->required();
  extract->add_option("--out", config.out_dir, "Output directory")->required();
  extract->add_option("--channels", config.channels, "Channels to load (all when omitted)")->delimiter(',');
  extract->add_option("--drivers", config.drivers, "Only extract trips of these drivers")->delimiter(',');
  extract->add_option("--input-rate", config.input_rate_hz, "Sampling rate of the files in Hz")->required();
  optional_value(extract, "--target-rate", config.target_rate_hz, "Down-sample to this rate in Hz");
  extract->add_option("--letter-seconds", config.letter_seconds, "Letter duration")->capture_default_str();
  extract->add_option("--min-pattern-size", config.min_pattern_size, "Shortest motif in letters")->capture_default_str();
  optional_value(extract, "--radius", config.radius, "Motif radius; estimated when omitted");
  extract->add_option("--radius-percentile", config.radius_percentile, "Percentile (in percent) of probe distances")->capture_default_str();
  extract->add_option("--probe-seconds", config.probe_seconds, "Probe length for radius estimation")->capture_default_str();
  extract->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  extract->add_flag("--export-letters", config.export_letters, "Also write each trip's letters");

  auto* summarize = app.add_subcommand("summarize", "Rank, prune and map motifs onto a DTW-SOM");
  summarize->fallthrough();
  summarize->add_option("--in", config.input_dir, "Output directory of extract")->required();
  summarize->add_option("--out", config.out_dir, "Output directory (defaults to --in)");
  summarize->add_option("--epochs", config.epochs, "Training epochs")->capture_default_str();
  optional_value(summarize, "--dtw-window-seconds", config.dtw_window_seconds,
                 "DTW band half-width (defaults to one letter)");
  summarize->add_option("--seed", config.seed, "Random seed")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Score a held-out driver's trips");
  analyze->fallthrough();
  analyze->add_option("--in", config.input_dir, "Output directory of summarize")->required();
  analyze->add_option("--out", config.out_dir, "Output directory (defaults to --in)");
  analyze->add_option("--metadata", config.metadata, "Relabel trips from this metadata table");
  analyze->add_option("--test-driver", config.test_driver, "Driver to hold out")->required();
  analyze->add_option("--bootstrap", config.bootstrap, "Bootstrap rounds (0 disables)")->capture_default_str();
  analyze->add_option("--seed", config.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const char* stage = extract->parsed() ? "extract" : summarize->parsed() ? "summarize" : "analyze";
  try {
    if (extract->parsed()) {
      const auto r = cmd_extract(config);
      std::cout << "trips " << r.trips << ", letters " << r.letters << " of " << r.letter_size << " samples, radius "
                << io::format_number(r.radius) << (r.radius_estimated ? " (estimated)" : "") << ", motifs "
                << r.motifs << '\n';
    } else if (summarize->parsed()) {
      const auto r = cmd_summarize(config);
      std::cout << "motifs " << r.motifs << ", anchors " << r.anchors << ", grid " << r.grid_side << 'x'
                << r.grid_side << ", dtw window " << r.dtw_window << '\n';
    } else {
      const auto r = cmd_analyze(config);
      for (const auto& s : r.scores) {
        std::cout << s.trip_id << ' ' << (s.predicted ? to_string(*s.predicted) : "indeterminate")
                  << (s.tie ? " (tie)" : "") << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}
