#include "tripmd/motif_ranking.hpp"

#include <algorithm>
#include <cmath>

namespace tripmd {

CorpusStats corpus_stats(std::span<const VsaxSequence> sequences) {
  CorpusStats stats;
  for (const auto& seq : sequences) {
    stats.letter_count += static_cast<Index>(seq.letters.size());
    if (stats.channels == 0 && !seq.letters.empty()) {
      stats.channels = static_cast<Index>(seq.letters.front().symbols.size());
    }
  }
  return stats;
}

double mdl_score(const Motif& motif, const CorpusStats& corpus) {
  const double symbols = std::pow(static_cast<double>(corpus.alphabet), static_cast<double>(corpus.channels));
  const double letter_bits = std::log2(symbols);
  const double extended_bits = std::log2(symbols + 1.0);
  const auto w = static_cast<double>(motif.pattern_size());
  const auto n = static_cast<double>(motif.occurrences());
  const auto letters = static_cast<double>(corpus.letter_count);
  return w * letter_bits + (letters - n * w + n) * extended_bits;
}

std::vector<RankedMotif> rank_motifs(std::span<const Motif> motifs, const CorpusStats& corpus) {
  std::vector<RankedMotif> ranked;
  ranked.reserve(motifs.size());
  for (const auto& m : motifs) ranked.push_back({m, mdl_score(m, corpus)});
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedMotif& a, const RankedMotif& b) {
    if (a.mdl_score != b.mdl_score) return a.mdl_score < b.mdl_score;
    if (a.motif.occurrences() != b.motif.occurrences()) return a.motif.occurrences() > b.motif.occurrences();
    if (a.motif.pattern_size() != b.motif.pattern_size()) return a.motif.pattern_size() > b.motif.pattern_size();
    return a.motif.center < b.motif.center;
  });
  return ranked;
}

std::vector<Motif> prune(std::span<const RankedMotif> ranked, double radius, const DtwConfig& config) {
  std::vector<Motif> kept;
  for (const auto& candidate : ranked) {
    const auto& x = candidate.motif.center_values;
    const bool separated = std::all_of(kept.begin(), kept.end(), [&](const Motif& p) {
      const auto& y = p.center_values;
      return dtw(x, y, fit_window(config, x.rows(), y.rows())) > 2.0 * radius;
    });
    if (separated) kept.push_back(candidate.motif);
  }
  return kept;
}

}  // namespace tripmd
