#include "tripmd/motif_search.hpp"

#include "tripmd/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tripmd {

void SearchParams::validate() const {
  if (letter_size < 1) throw Error(Errc::invalid_argument, "letter size must be at least 1");
  if (min_pattern_size < 1) throw Error(Errc::invalid_argument, "minimum pattern size must be at least 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::invalid_argument, "motif radius must be positive and finite");
  }
  if (dtw.window && *dtw.window < 0) throw Error(Errc::invalid_argument, "negative warping window");
}

RadiusEstimate estimate_radius(std::span<const TripRecording> trips, const RadiusOptions& options) {
  if (trips.empty()) throw Error(Errc::empty_input, "no trips for radius estimation");
  if (!(options.percentile >= 0.0 && options.percentile <= 100.0)) {
    throw Error(Errc::invalid_argument, "radius percentile outside [0,100]");
  }

  std::vector<Series> probes;
  for (const auto& trip : trips) {
    const Index length = seconds_to_samples(options.probe_seconds, trip.sample_rate_hz);
    if (length < 1) throw Error(Errc::invalid_argument, "probe shorter than one sample");
    for (Index start = 0; start + length <= trip.length(); start += length) {
      probes.emplace_back(trip.samples.middleRows(start, length));
    }
  }
  if (probes.size() < 2) {
    throw Error(Errc::too_few_probes, "radius estimation found " + std::to_string(probes.size()) +
                                          " probe(s), needs at least 2");
  }

  const std::size_t n = probes.size();
  const std::size_t total = n * (n - 1) / 2;
  std::vector<double> distances;
  if (total <= options.max_pairs) {
    distances.reserve(total);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        distances.push_back(dtw(probes[i], probes[j], fit_window(options.dtw, probes[i].rows(), probes[j].rows())));
      }
    }
  } else {
    auto rng = make_rng(options.seed);
    distances.reserve(options.max_pairs);
    for (std::size_t k = 0; k < options.max_pairs; ++k) {
      const auto i = static_cast<std::size_t>(uniform_index(rng, n));
      auto j = static_cast<std::size_t>(uniform_index(rng, n - 1));
      if (j >= i) ++j;
      distances.push_back(dtw(probes[i], probes[j], fit_window(options.dtw, probes[i].rows(), probes[j].rows())));
    }
  }
  const std::size_t pairs = distances.size();
  return {percentile(std::move(distances), options.percentile), n, pairs};
}

namespace {

struct MemberSet {
  std::vector<std::size_t> members;
  double total = 0.0;
};

struct Score {
  Index count = 0;
  double total = 0.0;
};

bool better(const Score& a, const Score& b) {
  return a.count > b.count || (a.count == b.count && a.total < b.total);
}

// Maximum-cardinality, then minimum-total-distance, set of pairwise
// non-overlapping intervals of one trip (weighted interval scheduling).
MemberSet best_disjoint(std::span<const Candidate> candidates, std::vector<std::size_t> eligible,
                        const Eigen::MatrixXd& dist, std::size_t center) {
  std::sort(eligible.begin(), eligible.end(), [&](std::size_t x, std::size_t y) {
    const auto& a = candidates[x].ref;
    const auto& b = candidates[y].ref;
    return std::tie(a.end, a.start, x) < std::tie(b.end, b.start, y);
  });
  const std::size_t m = eligible.size();
  std::vector<Score> best(m + 1);
  std::vector<std::size_t> prior(m);
  std::vector<bool> take(m + 1, false);
  for (std::size_t k = 1; k <= m; ++k) {
    const auto& ref = candidates[eligible[k - 1]].ref;
    const auto it = std::upper_bound(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(k - 1),
                                     ref.start, [&](Index start, std::size_t other) {
                                       return start < candidates[other].ref.end;
                                     });
    prior[k - 1] = static_cast<std::size_t>(it - eligible.begin());
    Score with = best[prior[k - 1]];
    with.count += 1;
    with.total += dist(static_cast<Index>(center), static_cast<Index>(eligible[k - 1]));
    if (better(with, best[k - 1])) {
      best[k] = with;
      take[k] = true;
    } else {
      best[k] = best[k - 1];
    }
  }
  MemberSet out;
  out.total = best[m].total;
  for (std::size_t k = m; k > 0;) {
    if (take[k]) {
      out.members.push_back(eligible[k - 1]);
      k = prior[k - 1];
    } else {
      --k;
    }
  }
  return out;
}

}  // namespace

std::optional<Motif> get_motif(const Pattern& pattern, double radius, std::span<const Candidate> candidates,
                               const DtwConfig& config) {
  const std::size_t n = candidates.size();
  if (n < 2) return std::nullopt;

  std::vector<Series> values;
  values.reserve(n);
  for (const auto& c : candidates) values.push_back(c.values);
  const Eigen::MatrixXd dist = pairwise_dtw(values, config);

  std::optional<std::size_t> best_center;
  MemberSet best_members;
  double best_mean = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::map<std::string, std::vector<std::size_t>> by_trip;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == c || overlap(candidates[c].ref, candidates[s].ref)) continue;
      if (dist(static_cast<Index>(c), static_cast<Index>(s)) <= radius) {
        by_trip[candidates[s].ref.trip_id].push_back(s);
      }
    }
    MemberSet set;
    for (auto& [trip, eligible] : by_trip) {
      auto part = best_disjoint(candidates, std::move(eligible), dist, c);
      set.members.insert(set.members.end(), part.members.begin(), part.members.end());
      set.total += part.total;
    }
    if (set.members.empty()) continue;
    const double mean = set.total / static_cast<double>(set.members.size());
    if (!best_center || set.members.size() > best_members.members.size() ||
        (set.members.size() == best_members.members.size() && mean < best_mean)) {
      best_center = c;
      best_mean = mean;
      best_members = std::move(set);
    }
  }
  if (!best_center) return std::nullopt;

  Motif motif;
  motif.pattern = pattern;
  motif.center = candidates[*best_center].ref;
  motif.center_values = candidates[*best_center].values;
  motif.mean_member_distance = best_mean;
  for (const auto s : best_members.members) motif.members.push_back(candidates[s].ref);
  std::sort(motif.members.begin(), motif.members.end());
  return motif;
}

std::vector<Motif> extract_motifs(std::span<const TripRecording> trips, std::span<const VsaxSequence> sequences,
                                  const SearchParams& params) {
  params.validate();
  std::map<std::string, const TripRecording*> trip_by_id;
  for (const auto& trip : trips) trip_by_id.emplace(trip.trip_id, &trip);

  std::vector<Motif> motifs;
  for (Index w = params.min_pattern_size;; ++w) {
    // Ordered by pattern key; within one key, by sequence order then position.
    std::map<std::string, std::vector<Word>> buckets;
    std::size_t total = 0;
    for (const auto& seq : sequences) {
      for (auto& word : words(seq, w)) {
        auto key = pattern_key(word.symbols);
        buckets[std::move(key)].push_back(std::move(word));
        ++total;
      }
    }
    if (buckets.size() == total) break;

    for (auto& [key, bucket] : buckets) {
      if (bucket.size() < 2) continue;
      std::vector<Candidate> candidates;
      candidates.reserve(bucket.size());
      for (const auto& word : bucket) {
        const auto it = trip_by_id.find(word.span.trip_id);
        if (it == trip_by_id.end()) throw Error(Errc::unknown_trip, "sequence for unknown trip " + word.span.trip_id);
        candidates.push_back({word.span, slice(*it->second, word.span)});
      }
      if (auto motif = get_motif(bucket.front().symbols, params.radius, candidates, params.dtw)) {
        motif->id = static_cast<Index>(motifs.size());
        motifs.push_back(std::move(*motif));
      }
    }
  }
  return motifs;
}

std::vector<Motif> extract_motifs(std::span<const TripRecording> trips, const SearchParams& params,
                                  const Breakpoints& breakpoints) {
  params.validate();
  const auto sequences = encode(trips, params.letter_size, breakpoints);
  return extract_motifs(trips, sequences, params);
}

}  // namespace tripmd
