#pragma once

#include "tripmd/dtw_som.hpp"
#include "tripmd/motif_ranking.hpp"
#include "tripmd/vsax.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tripmd::io {

namespace fs = std::filesystem;

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

void write_breakpoints(const fs::path& path, const Breakpoints& breakpoints,
                       const std::vector<std::string>& channel_names);
Breakpoints read_breakpoints(const fs::path& path);

/// motifs.csv: motif_id,pattern,w,center_trip,center_start,center_end,
/// mean_distance,members where members is `trip:start-end|...`.
/// centers.csv: motif_id,t,<channel>... with the center values.
void write_motifs(const fs::path& motifs_path, const fs::path& centers_path, std::span<const Motif> motifs,
                  const std::vector<std::string>& channel_names);
std::vector<Motif> read_motifs(const fs::path& motifs_path, const fs::path& centers_path);

void write_ranked(const fs::path& path, std::span<const RankedMotif> ranked);
void write_anchors(const fs::path& path, std::span<const Motif> anchors, std::span<const RankedMotif> ranked);

/// prototypes.csv: unit,row,col,t,<channel>...
void write_prototypes(const fs::path& path, const SomGrid& grid, const std::vector<std::string>& channel_names);
SomGrid read_prototypes(const fs::path& path);

/// One grid row per line.
template <typename Derived>
void write_matrix(const fs::path& path, const Eigen::DenseBase<Derived>& m);

void write_assignments(const fs::path& path, std::span<const Motif> motifs, const Assignment& assignment);
/// Returns the assignment in the order of `motifs` (matched by id).
Assignment read_assignments(const fs::path& path, std::span<const Motif> motifs);

/// key = value lines grouped under [section] headers; readable by the CLI's
/// --config option for replay.
class Manifest {
 public:
  void set(const std::string& section, const std::string& key, const std::string& value);
  void set(const std::string& section, const std::string& key, double value);
  void set(const std::string& section, const std::string& key, long long value);

  const std::string& get(const std::string& section, const std::string& key) const;
  double get_number(const std::string& section, const std::string& key) const;
  bool has(const std::string& section, const std::string& key) const;

  void write(const fs::path& path) const;
  static Manifest read(const fs::path& path);

 private:
  std::vector<std::string> section_order_;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
  fs::path origin_;
};

template <typename Derived>
void write_matrix(const fs::path& path, const Eigen::DenseBase<Derived>& m) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_number(static_cast<double>(m(r, c)));
    }
    out << '\n';
  }
}

}  // namespace tripmd::io
