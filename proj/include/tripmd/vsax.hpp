#pragma once

#include "tripmd/trip_data.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tripmd {

/// Alphabet index 0..4, printed as 1..5.
using Symbol = std::uint8_t;
inline constexpr int kAlphabetSize = 5;

/// One symbol per channel.
using SymbolTuple = std::vector<Symbol>;
using Pattern = std::vector<SymbolTuple>;

/// Linear interpolation between order statistics; `pct` in [0, 100].
double percentile(std::vector<double> values, double pct);

struct Breakpoints {
  /// Per channel: b1 = -inf, b2..b5 = 5th/15th/85th/95th percentiles, b6 = +inf.
  std::vector<std::array<double, 6>> channels;

  Index size() const noexcept { return static_cast<Index>(channels.size()); }

  /// Region i is [b_i, b_{i+1}); when b2..b5 coincide every value maps to
  /// the middle symbol.
  Symbol symbol(Index channel, double value) const;
};

Breakpoints compute_breakpoints(std::span<const TripRecording> trips);

struct VsaxLetter {
  SymbolTuple symbols;
  SubseqRef span;
};

struct VsaxSequence {
  std::string trip_id;
  Index letter_size = 0;
  std::vector<VsaxLetter> letters;
};

/// Tumbling windows of `letter_size` samples, merged while the symbol tuple
/// repeats. Trailing samples past the last full window are not encoded.
VsaxSequence encode(const TripRecording& trip, Index letter_size, const Breakpoints& breakpoints);

std::vector<VsaxSequence> encode(std::span<const TripRecording> trips, Index letter_size,
                                 const Breakpoints& breakpoints);

struct Word {
  Pattern symbols;
  SubseqRef span;
  std::vector<Index> letter_offsets;
};

/// Every run of `w` consecutive letters.
std::vector<Word> words(const VsaxSequence& sequence, Index w);

/// Compact text form, e.g. "33.51.55": one digit per channel, letters
/// separated by dots.
std::string pattern_key(const Pattern& pattern);
Pattern parse_pattern(const std::string& text);

/// Debug export: `start,end,symbol_ch1,symbol_ch2,...`.
void write_letters(std::ostream& out, const VsaxSequence& sequence);

}  // namespace tripmd
