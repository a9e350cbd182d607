#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trustlab/sim.hpp"

namespace trustlab {

// Benchmark quantities for a designated honest set H, computed from
// transcripts. Guarantees are meant to hold for every H simultaneously, so
// everything here takes H as a parameter.

struct RegretReport {
  std::vector<int> h;
  double p_h = 0.0;    // realized payoff of H, transfer adjustments included
  double opt_h = 0.0;  // counterfactual benchmark from raw payoffs
  double regret = 0.0;
  std::vector<std::pair<int, double>> per_user;
};

// Sum of realized payoffs of members of H over rounds they interacted in,
// including real transfer adjustments when the transfer protocol ran.
double payoff_of_set(const SimulationTranscript& t, const std::vector<int>& h);

// Sum of p0_raw + p1_raw over rounds with both parties in H, whether or not
// the interaction happened.
double opt_of_set(const SimulationTranscript& t, const std::vector<int>& h);

RegretReport regret_report(const SimulationTranscript& t, const std::vector<int>& h);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares fit of log(regret) against log(T). Regrets are clamped at a
// small positive floor before taking logs.
FitResult regret_scaling_fit(const std::vector<std::pair<double, double>>& points);

// Deterministic subset sampler: all non-empty subsets when the pool has at
// most 4 members, `count` random non-empty subsets otherwise.
std::vector<std::vector<int>> sample_subsets(const std::vector<int>& pool, int count,
                                             uint64_t seed);

}  // namespace trustlab
