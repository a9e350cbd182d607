#pragma once

#include <cstdint>
#include <vector>

#include "trustlab/types.hpp"

namespace trustlab {

// Unavoidable-regret construction: uniform random pairs with uniform +-1
// payoffs, and a greedy partition H1 / H2 built from the transcript so that
// OPT(H1) + OPT(H2) grows like sqrt(N T) while every strategy's expected
// payoff is zero.

struct PmRound {
  int x0 = 0, x1 = 0;
  double p = 0.0;
};

std::vector<PmRound> pm1_transcript(int n_users, long t_rounds, uint64_t seed);

// Greedy construction: users 0..N/2 are always in H1; each x > N/2 joins iff
// the sum P_x of payoffs over its rounds with lower-indexed H1 partners is
// strictly positive. P_x is returned for every user.
void build_h1(const std::vector<PmRound>& rounds, int n_users, std::vector<char>& in_h1,
              Vector& px);

struct LowerBoundRun {
  std::vector<PmRound> rounds;
  std::vector<char> in_h1;
  Vector px;
  double opt_h1 = 0.0;
  double opt_h2 = 0.0;
};

LowerBoundRun lower_bound_run(int n_users, long t_rounds, uint64_t seed);

struct LowerBoundStats {
  double mean_gap = 0.0;      // mean of opt_h1 + opt_h2
  double stderr_gap = 0.0;
  double mean_opt_h2 = 0.0;
  double stderr_opt_h2 = 0.0;
  double ratio = 0.0;         // mean_gap / sqrt(N T)
  int seeds = 0;
};

LowerBoundStats lower_bound_gap(int n_users, long t_rounds, int n_seeds, uint64_t seed0);

// Runs the doubling planner against the +-1 nature and returns sum_t s^t p^t
// (the planner-game payoff of the full population).
double planner_pm1_payoff(int n_users, long t_rounds, uint64_t seed);

}  // namespace trustlab
