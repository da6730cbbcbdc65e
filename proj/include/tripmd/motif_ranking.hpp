#pragma once

#include "tripmd/motif_search.hpp"

#include <span>
#include <vector>

namespace tripmd {

/// Totals of the encoded corpus that the description length depends on.
struct CorpusStats {
  Index letter_count = 0;
  Index channels = 0;
  Index alphabet = kAlphabetSize;
};

CorpusStats corpus_stats(std::span<const VsaxSequence> sequences);

/// Description length, in bits, of the letter stream once the motif's word
/// becomes a dictionary entry:
///
///   w * log2(A^d) + (N - n*w + n) * log2(A^d + 1)
///
/// with w the pattern size, n the occurrence count and N the corpus letter
/// count. Lower is better.
double mdl_score(const Motif& motif, const CorpusStats& corpus);

struct RankedMotif {
  Motif motif;
  double mdl_score = 0.0;
};

/// Scores and sorts ascending. Ties go to more occurrences, then a longer
/// pattern, then the earlier center.
std::vector<RankedMotif> rank_motifs(std::span<const Motif> motifs, const CorpusStats& corpus);

/// Greedy k-motif selection over a score-sorted list: a motif is kept when its
/// center lies farther than 2R from every kept center.
std::vector<Motif> prune(std::span<const RankedMotif> ranked, double radius, const DtwConfig& config = {});

}  // namespace tripmd
