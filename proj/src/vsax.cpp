#include "tripmd/vsax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace tripmd {

namespace {

double sorted_percentile(const std::vector<double>& values, double pct) {
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw Error(Errc::empty_input, "percentile of an empty set");
  if (!(pct >= 0.0 && pct <= 100.0)) throw Error(Errc::invalid_argument, "percentile outside [0,100]");
  std::sort(values.begin(), values.end());
  return sorted_percentile(values, pct);
}

Symbol Breakpoints::symbol(Index channel, double value) const {
  const auto& b = channels.at(static_cast<std::size_t>(channel));
  if (b[1] == b[4]) return 2;
  Symbol s = 0;
  for (int i = 1; i <= 4; ++i) {
    if (value >= b[i]) s = static_cast<Symbol>(i);
  }
  return s;
}

Breakpoints compute_breakpoints(std::span<const TripRecording> trips) {
  if (trips.empty()) throw Error(Errc::empty_input, "no trips to compute breakpoints from");
  const Index d = trips.front().channels();
  Breakpoints bp;
  bp.channels.resize(static_cast<std::size_t>(d));
  for (Index c = 0; c < d; ++c) {
    std::vector<double> pooled;
    for (const auto& trip : trips) {
      if (trip.channels() != d) {
        throw Error(Errc::channel_mismatch, "trip " + trip.trip_id + " has a different channel count");
      }
      const auto col = trip.samples.col(c);
      pooled.insert(pooled.end(), col.begin(), col.end());
    }
    if (pooled.empty()) throw Error(Errc::empty_input, "channel without samples");
    std::sort(pooled.begin(), pooled.end());
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto& b = bp.channels[static_cast<std::size_t>(c)];
    b = {-inf, sorted_percentile(pooled, 5), sorted_percentile(pooled, 15),
         sorted_percentile(pooled, 85), sorted_percentile(pooled, 95), inf};
  }
  return bp;
}

VsaxSequence encode(const TripRecording& trip, Index letter_size, const Breakpoints& breakpoints) {
  if (letter_size < 1) throw Error(Errc::invalid_argument, "letter size must be at least 1");
  if (trip.length() < letter_size) {
    throw Error(Errc::trip_too_short, "trip " + trip.trip_id + " has " + std::to_string(trip.length()) +
                                          " samples, fewer than the letter size " +
                                          std::to_string(letter_size));
  }
  if (trip.channels() != breakpoints.size()) {
    throw Error(Errc::channel_mismatch, "trip " + trip.trip_id + " channel count differs from breakpoints");
  }

  VsaxSequence seq;
  seq.trip_id = trip.trip_id;
  seq.letter_size = letter_size;
  const Index windows = trip.length() / letter_size;
  SymbolTuple symbols(static_cast<std::size_t>(trip.channels()));
  for (Index k = 0; k < windows; ++k) {
    const Index start = k * letter_size;
    const Eigen::RowVectorXd paa = trip.samples.middleRows(start, letter_size).colwise().mean();
    for (Index c = 0; c < trip.channels(); ++c) {
      symbols[static_cast<std::size_t>(c)] = breakpoints.symbol(c, paa(c));
    }
    if (!seq.letters.empty() && seq.letters.back().symbols == symbols) {
      seq.letters.back().span.end = start + letter_size;
    } else {
      seq.letters.push_back({symbols, {trip.trip_id, start, start + letter_size}});
    }
  }
  return seq;
}

std::vector<VsaxSequence> encode(std::span<const TripRecording> trips, Index letter_size,
                                 const Breakpoints& breakpoints) {
  std::vector<VsaxSequence> out;
  out.reserve(trips.size());
  for (const auto& trip : trips) out.push_back(encode(trip, letter_size, breakpoints));
  return out;
}

std::vector<Word> words(const VsaxSequence& sequence, Index w) {
  if (w < 1) throw Error(Errc::invalid_argument, "pattern size must be at least 1");
  const auto n = static_cast<Index>(sequence.letters.size());
  std::vector<Word> out;
  if (n < w) return out;
  out.reserve(static_cast<std::size_t>(n - w + 1));
  for (Index i = 0; i + w <= n; ++i) {
    Word word;
    word.symbols.reserve(static_cast<std::size_t>(w));
    for (Index j = i; j < i + w; ++j) {
      const auto& letter = sequence.letters[static_cast<std::size_t>(j)];
      word.symbols.push_back(letter.symbols);
      word.letter_offsets.push_back(letter.span.start);
    }
    word.span = {sequence.trip_id, sequence.letters[static_cast<std::size_t>(i)].span.start,
                 sequence.letters[static_cast<std::size_t>(i + w - 1)].span.end};
    out.push_back(std::move(word));
  }
  return out;
}

std::string pattern_key(const Pattern& pattern) {
  std::string key;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i > 0) key.push_back('.');
    for (const auto s : pattern[i]) key.push_back(static_cast<char>('1' + s));
  }
  return key;
}

Pattern parse_pattern(const std::string& text) {
  Pattern pattern;
  SymbolTuple current;
  for (const char ch : text) {
    if (ch == '.') {
      if (current.empty()) throw Error(Errc::parse, "empty letter in pattern '" + text + "'");
      pattern.push_back(std::move(current));
      current.clear();
    } else if (ch >= '1' && ch < '1' + kAlphabetSize) {
      current.push_back(static_cast<Symbol>(ch - '1'));
    } else {
      throw Error(Errc::parse, "bad symbol in pattern '" + text + "'");
    }
  }
  if (current.empty()) throw Error(Errc::parse, "empty letter in pattern '" + text + "'");
  pattern.push_back(std::move(current));
  for (const auto& letter : pattern) {
    if (letter.size() != pattern.front().size()) {
      throw Error(Errc::parse, "inconsistent channel count in pattern '" + text + "'");
    }
  }
  return pattern;
}

void write_letters(std::ostream& out, const VsaxSequence& sequence) {
  std::size_t d = sequence.letters.empty() ? 0 : sequence.letters.front().symbols.size();
  out << "start,end";
  for (std::size_t c = 0; c < d; ++c) out << ",symbol_ch" << (c + 1);
  out << '\n';
  for (const auto& letter : sequence.letters) {
    out << letter.span.start << ',' << letter.span.end;
    for (const auto s : letter.symbols) out << ',' << static_cast<int>(s) + 1;
    out << '\n';
  }
}

}  // namespace tripmd
