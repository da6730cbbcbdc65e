#include "tripmd/behavior.hpp"

#include "tripmd/random.hpp"

#include <cmath>

namespace tripmd {

OccurrenceCounts subsequence_counts(const Assignment& assignment, std::span<const Motif> motifs,
                                    const std::set<std::string>& known_trips, std::span<const Index> multiplicity) {
  if (assignment.unit_of.size() != motifs.size()) {
    throw Error(Errc::invalid_argument, "assignment size differs from motif count");
  }
  if (!multiplicity.empty() && multiplicity.size() != motifs.size()) {
    throw Error(Errc::invalid_argument, "multiplicity size differs from motif count");
  }
  OccurrenceCounts counts;
  for (std::size_t k = 0; k < motifs.size(); ++k) {
    const Index weight = multiplicity.empty() ? 1 : multiplicity[k];
    if (weight == 0) continue;
    const Index unit = assignment.unit_of[k];
    const auto tally = [&](const SubseqRef& ref) {
      if (!known_trips.contains(ref.trip_id)) {
        throw Error(Errc::unknown_trip, "motif " + std::to_string(motifs[k].id) + " refers to trip " + ref.trip_id);
      }
      counts[{unit, ref.trip_id}] += weight;
    };
    tally(motifs[k].center);
    for (const auto& m : motifs[k].members) tally(m);
  }
  return counts;
}

ClusterBehaviorRates cluster_rates(const OccurrenceCounts& counts, Index unit_count,
                                   const std::map<std::string, Behavior>& training_trips) {
  ClusterBehaviorRates out;
  out.rates = Eigen::MatrixXd::Zero(unit_count, kBehaviorCount);
  out.totals = Eigen::VectorXd::Zero(unit_count);
  for (const auto& [key, n] : counts) {
    const auto it = training_trips.find(key.second);
    if (it == training_trips.end()) continue;
    if (key.first < 0 || key.first >= unit_count) throw Error(Errc::out_of_range, "unit outside the grid");
    out.rates(key.first, static_cast<int>(it->second)) += static_cast<double>(n);
    out.totals(key.first) += static_cast<double>(n);
  }
  for (Index u = 0; u < unit_count; ++u) {
    if (out.totals(u) > 0.0) out.rates.row(u) /= out.totals(u);
  }
  return out;
}

Eigen::VectorXd trip_unit_counts(const OccurrenceCounts& counts, Index unit_count, const std::string& trip_id) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(unit_count);
  for (const auto& [key, n] : counts) {
    if (key.second == trip_id && key.first >= 0 && key.first < unit_count) out(key.first) += static_cast<double>(n);
  }
  return out;
}

BehaviorScore trip_scores(const ClusterBehaviorRates& rates, const Eigen::VectorXd& test_counts, std::string trip_id) {
  if (test_counts.size() != rates.units()) throw Error(Errc::invalid_argument, "count vector size differs from unit count");
  BehaviorScore out;
  out.trip_id = std::move(trip_id);
  out.scores = rates.rates.transpose() * test_counts;
  const double top = out.scores.maxCoeff();
  if (!(top > 0.0)) return out;
  int winners = 0;
  for (int b = 0; b < kBehaviorCount; ++b) {
    if (out.scores(b) == top) {
      if (!out.predicted) out.predicted = static_cast<Behavior>(b);
      ++winners;
    }
  }
  out.tie = winners > 1;
  return out;
}

std::vector<BootstrapStats> bootstrap_scores(const BootstrapContext& context, std::size_t samples,
                                             std::uint64_t seed) {
  return bootstrap_scores(context, samples, [seed](std::size_t round, std::size_t n) {
    auto rng = make_rng(seed, round);
    std::vector<Index> drawn(n, 0);
    for (std::size_t k = 0; k < n; ++k) drawn[uniform_index(rng, n)] += 1;
    return drawn;
  });
}

std::vector<BootstrapStats> bootstrap_scores(const BootstrapContext& context, std::size_t samples,
                                             const Resampler& resampler) {
  if (samples < 1) throw Error(Errc::invalid_argument, "bootstrap needs at least one sample");
  if (context.assignment == nullptr) throw Error(Errc::invalid_argument, "bootstrap without an assignment");

  std::set<std::string> known;
  for (const auto& [trip, b] : context.training_trips) known.insert(trip);
  known.insert(context.test_trips.begin(), context.test_trips.end());

  std::vector<BootstrapStats> stats(context.test_trips.size());
  std::vector<Eigen::Vector3d> sum_sq(context.test_trips.size(), Eigen::Vector3d::Zero());
  for (std::size_t t = 0; t < stats.size(); ++t) stats[t].trip_id = context.test_trips[t];

  for (std::size_t round = 0; round < samples; ++round) {
    const auto drawn = resampler(round, context.motifs.size());
    const auto counts = subsequence_counts(*context.assignment, context.motifs, known, drawn);
    const auto rates = cluster_rates(counts, context.unit_count, context.training_trips);
    for (std::size_t t = 0; t < stats.size(); ++t) {
      const auto score = trip_scores(rates, trip_unit_counts(counts, context.unit_count, stats[t].trip_id));
      stats[t].mean += score.scores;
      sum_sq[t] += score.scores.cwiseAbs2();
    }
  }
  const auto n = static_cast<double>(samples);
  for (std::size_t t = 0; t < stats.size(); ++t) {
    stats[t].mean /= n;
    const Eigen::Vector3d var = (sum_sq[t] / n - stats[t].mean.cwiseAbs2()).cwiseMax(0.0);
    stats[t].stddev = var.cwiseSqrt();
  }
  return stats;
}

}  // namespace tripmd
