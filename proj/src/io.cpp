#include "tripmd/io.hpp"

#include "csv.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>

namespace tripmd::io {

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return in;
}

// Line reader that reports file:line on every parse failure.
class Table {
 public:
  Table(const fs::path& path, std::size_t min_columns) : path_(path), in_(open_in(path)) {
    std::string line;
    if (!std::getline(in_, line)) throw Error(Errc::parse, path_.string() + ": missing header");
    header_.clear();
    for (const auto cell : csv::split(line)) header_.emplace_back(cell);
    if (header_.size() < min_columns) fail("too few header columns");
  }

  bool next() {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (csv::blank(line_)) continue;
      cells_ = csv::split(line_);
      if (cells_.size() != header_.size()) fail("expected " + std::to_string(header_.size()) + " cells");
      return true;
    }
    return false;
  }

  const std::vector<std::string>& header() const { return header_; }
  std::string text(std::size_t i) const { return std::string(cells_.at(i)); }

  double number(std::size_t i) const {
    const auto v = csv::to_double(cells_.at(i));
    if (!v) fail("malformed number '" + text(i) + "'");
    return *v;
  }

  long long integer(std::size_t i) const {
    const auto v = csv::to_integer(cells_.at(i));
    if (!v) fail("malformed integer '" + text(i) + "'");
    return *v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse, path_.string() + ":" + std::to_string(line_no_) + ": " + what);
  }

 private:
  fs::path path_;
  std::ifstream in_;
  std::vector<std::string> header_;
  std::string line_;
  std::vector<std::string_view> cells_;
  long line_no_ = 1;
};

std::string format_ref(const SubseqRef& ref) {
  return ref.trip_id + ":" + std::to_string(ref.start) + "-" + std::to_string(ref.end);
}

SubseqRef parse_ref(const Table& table, std::string_view text) {
  const auto colon = text.rfind(':');
  const auto dash = text.rfind('-');
  if (colon == std::string_view::npos || dash == std::string_view::npos || dash < colon) {
    table.fail("malformed span '" + std::string(text) + "'");
  }
  const auto start = csv::to_integer(text.substr(colon + 1, dash - colon - 1));
  const auto end = csv::to_integer(text.substr(dash + 1));
  if (!start || !end || *start < 0 || *end <= *start) table.fail("malformed span '" + std::string(text) + "'");
  return {std::string(text.substr(0, colon)), *start, *end};
}

}  // namespace

std::string format_number(double value) { return csv::format(value); }

void write_breakpoints(const fs::path& path, const Breakpoints& breakpoints,
                       const std::vector<std::string>& channel_names) {
  auto out = open_out(path);
  out << "channel,b2,b3,b4,b5\n";
  for (Index c = 0; c < breakpoints.size(); ++c) {
    const auto& b = breakpoints.channels[static_cast<std::size_t>(c)];
    out << channel_names.at(static_cast<std::size_t>(c));
    for (int i = 1; i <= 4; ++i) out << ',' << format_number(b[i]);
    out << '\n';
  }
}

Breakpoints read_breakpoints(const fs::path& path) {
  Table table(path, 5);
  Breakpoints bp;
  constexpr double inf = std::numeric_limits<double>::infinity();
  while (table.next()) {
    bp.channels.push_back({-inf, table.number(1), table.number(2), table.number(3), table.number(4), inf});
  }
  return bp;
}

void write_motifs(const fs::path& motifs_path, const fs::path& centers_path, std::span<const Motif> motifs,
                  const std::vector<std::string>& channel_names) {
  auto out = open_out(motifs_path);
  out << "motif_id,pattern,w,center_trip,center_start,center_end,mean_distance,members\n";
  for (const auto& m : motifs) {
    out << m.id << ',' << pattern_key(m.pattern) << ',' << m.pattern_size() << ',' << m.center.trip_id << ','
        << m.center.start << ',' << m.center.end << ',' << format_number(m.mean_member_distance) << ',';
    for (std::size_t k = 0; k < m.members.size(); ++k) {
      if (k > 0) out << '|';
      out << format_ref(m.members[k]);
    }
    out << '\n';
  }

  auto centers = open_out(centers_path);
  centers << "motif_id,t";
  for (const auto& name : channel_names) centers << ',' << name;
  centers << '\n';
  for (const auto& m : motifs) {
    for (Index t = 0; t < m.center_values.rows(); ++t) {
      centers << m.id << ',' << t;
      for (Index c = 0; c < m.center_values.cols(); ++c) centers << ',' << format_number(m.center_values(t, c));
      centers << '\n';
    }
  }
}

std::vector<Motif> read_motifs(const fs::path& motifs_path, const fs::path& centers_path) {
  std::vector<Motif> motifs;
  std::map<Index, std::size_t> by_id;
  {
    Table table(motifs_path, 8);
    while (table.next()) {
      Motif m;
      m.id = table.integer(0);
      try {
        m.pattern = parse_pattern(table.text(1));
      } catch (const Error& e) {
        table.fail(e.what());
      }
      if (table.integer(2) != m.pattern_size()) table.fail("pattern size does not match pattern");
      m.center = {table.text(3), table.integer(4), table.integer(5)};
      if (m.center.start < 0 || m.center.end <= m.center.start) table.fail("malformed center span");
      m.mean_member_distance = table.number(6);
      const auto members = table.text(7);
      if (members.empty()) table.fail("motif without members");
      for (const auto part : csv::split(members, '|')) m.members.push_back(parse_ref(table, part));
      if (!by_id.emplace(m.id, motifs.size()).second) table.fail("duplicate motif id");
      motifs.push_back(std::move(m));
    }
  }

  Table table(centers_path, 3);
  const auto d = static_cast<Index>(table.header().size() - 2);
  std::map<Index, std::vector<std::vector<double>>> rows;
  while (table.next()) {
    const Index id = table.integer(0);
    auto& series = rows[id];
    if (table.integer(1) != static_cast<long long>(series.size())) table.fail("center rows out of order");
    std::vector<double> row;
    for (Index c = 0; c < d; ++c) row.push_back(table.number(static_cast<std::size_t>(c + 2)));
    series.push_back(std::move(row));
  }
  for (auto& m : motifs) {
    const auto it = rows.find(m.id);
    if (it == rows.end() || static_cast<Index>(it->second.size()) != m.center.length()) {
      throw Error(Errc::parse, centers_path.string() + ": center values missing or wrong length for motif " +
                                   std::to_string(m.id));
    }
    m.center_values.resize(m.center.length(), d);
    for (Index t = 0; t < m.center.length(); ++t) {
      for (Index c = 0; c < d; ++c) {
        m.center_values(t, c) = it->second[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
      }
    }
  }
  return motifs;
}

void write_ranked(const fs::path& path, std::span<const RankedMotif> ranked) {
  auto out = open_out(path);
  out << "rank,motif_id,mdl_score,occurrences,w\n";
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const auto& m = ranked[r].motif;
    out << r << ',' << m.id << ',' << format_number(ranked[r].mdl_score) << ',' << m.occurrences() << ','
        << m.pattern_size() << '\n';
  }
}

void write_anchors(const fs::path& path, std::span<const Motif> anchors, std::span<const RankedMotif> ranked) {
  auto out = open_out(path);
  out << "anchor,motif_id,mdl_score\n";
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    const auto it = std::find_if(ranked.begin(), ranked.end(),
                                 [&](const RankedMotif& r) { return r.motif.id == anchors[a].id; });
    out << a << ',' << anchors[a].id << ',' << (it == ranked.end() ? "" : format_number(it->mdl_score)) << '\n';
  }
}

void write_prototypes(const fs::path& path, const SomGrid& grid, const std::vector<std::string>& channel_names) {
  auto out = open_out(path);
  out << "unit,row,col,t";
  for (const auto& name : channel_names) out << ',' << name;
  out << '\n';
  for (Index u = 0; u < grid.size(); ++u) {
    const auto& p = grid.unit(u);
    for (Index t = 0; t < p.rows(); ++t) {
      out << u << ',' << u / grid.cols << ',' << u % grid.cols << ',' << t;
      for (Index c = 0; c < p.cols(); ++c) out << ',' << format_number(p(t, c));
      out << '\n';
    }
  }
}

SomGrid read_prototypes(const fs::path& path) {
  Table table(path, 5);
  const auto d = static_cast<Index>(table.header().size() - 4);
  std::map<Index, std::vector<std::vector<double>>> rows;
  Index max_row = -1;
  Index max_col = -1;
  while (table.next()) {
    auto& unit = rows[table.integer(0)];
    if (table.integer(3) != static_cast<long long>(unit.size())) table.fail("prototype rows out of order");
    max_row = std::max<Index>(max_row, table.integer(1));
    max_col = std::max<Index>(max_col, table.integer(2));
    std::vector<double> row;
    for (Index c = 0; c < d; ++c) row.push_back(table.number(static_cast<std::size_t>(c + 4)));
    unit.push_back(std::move(row));
  }
  SomGrid grid;
  grid.rows = max_row + 1;
  grid.cols = max_col + 1;
  if (static_cast<Index>(rows.size()) != grid.size()) {
    throw Error(Errc::parse, path.string() + ": unit count does not fill the grid");
  }
  for (Index u = 0; u < grid.size(); ++u) {
    const auto it = rows.find(u);
    if (it == rows.end()) throw Error(Errc::parse, path.string() + ": missing unit " + std::to_string(u));
    Series p(static_cast<Index>(it->second.size()), d);
    for (Index t = 0; t < p.rows(); ++t) {
      for (Index c = 0; c < d; ++c) p(t, c) = it->second[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
    }
    grid.units.push_back(std::move(p));
  }
  return grid;
}

void write_assignments(const fs::path& path, std::span<const Motif> motifs, const Assignment& assignment) {
  auto out = open_out(path);
  out << "motif_id,unit\n";
  for (std::size_t k = 0; k < motifs.size(); ++k) out << motifs[k].id << ',' << assignment.unit_of.at(k) << '\n';
}

Assignment read_assignments(const fs::path& path, std::span<const Motif> motifs) {
  Table table(path, 2);
  std::map<Index, Index> unit_by_id;
  while (table.next()) unit_by_id[table.integer(0)] = table.integer(1);
  Assignment out;
  for (const auto& m : motifs) {
    const auto it = unit_by_id.find(m.id);
    if (it == unit_by_id.end()) {
      throw Error(Errc::parse, path.string() + ": no assignment for motif " + std::to_string(m.id));
    }
    out.unit_of.push_back(it->second);
  }
  return out;
}

void Manifest::set(const std::string& section, const std::string& key, const std::string& value) {
  if (!sections_.contains(section)) section_order_.push_back(section);
  auto& entries = sections_[section];
  const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.first == key; });
  if (it != entries.end()) {
    it->second = value;
  } else {
    entries.emplace_back(key, value);
  }
}

void Manifest::set(const std::string& section, const std::string& key, double value) {
  set(section, key, format_number(value));
}

void Manifest::set(const std::string& section, const std::string& key, long long value) {
  set(section, key, std::to_string(value));
}

bool Manifest::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& Manifest::get(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  if (it != sections_.end()) {
    for (const auto& [k, v] : it->second) {
      if (k == key) return v;
    }
  }
  throw Error(Errc::parse, origin_.string() + ": missing [" + section + "] " + key);
}

double Manifest::get_number(const std::string& section, const std::string& key) const {
  const auto v = csv::to_double(get(section, key));
  if (!v) throw Error(Errc::parse, origin_.string() + ": [" + section + "] " + key + " is not a number");
  return *v;
}

void Manifest::write(const fs::path& path) const {
  auto out = open_out(path);
  for (std::size_t s = 0; s < section_order_.size(); ++s) {
    if (s > 0) out << '\n';
    out << '[' << section_order_[s] << "]\n";
    for (const auto& [k, v] : sections_.at(section_order_[s])) out << k << " = \"" << v << "\"\n";
  }
}

Manifest Manifest::read(const fs::path& path) {
  auto in = open_in(path);
  Manifest m;
  m.origin_ = path;
  std::string section;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = csv::trim(line);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw Error(Errc::parse, path.string() + ":" + std::to_string(line_no) + ": bad section");
      section = std::string(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::parse, path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    auto value = csv::trim(text.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    m.set(section, std::string(csv::trim(text.substr(0, eq))), std::string(value));
  }
  return m;
}

}  // namespace tripmd::io
