#include "trustlab/lowerbound.hpp"

#include <cmath>
#include <stdexcept>

#include "trustlab/beacon.hpp"
#include "trustlab/planner.hpp"

namespace trustlab {

std::vector<PmRound> pm1_transcript(int n_users, long t_rounds, uint64_t seed) {
  if (n_users < 2) throw std::invalid_argument("pm1_transcript: need at least two users");
  Beacon beacon(seed);
  std::vector<PmRound> rounds;
  rounds.reserve(static_cast<size_t>(t_rounds));
  for (long t = 0; t < t_rounds; ++t) {
    const uint64_t u = static_cast<uint64_t>(t);
    PmRound r;
    r.x0 = static_cast<int>(beacon.below(stream::kNaturePair, 2 * u, n_users));
    r.x1 = static_cast<int>(beacon.below(stream::kNaturePair, 2 * u + 1, n_users - 1));
    if (r.x1 >= r.x0) ++r.x1;
    r.p = beacon.below(stream::kNaturePayoff, u, 2) == 0 ? -1.0 : 1.0;
    rounds.push_back(r);
  }
  return rounds;
}

void build_h1(const std::vector<PmRound>& rounds, int n_users, std::vector<char>& in_h1,
              Vector& px) {
  in_h1.assign(n_users, 0);
  px = Vector::Zero(n_users);
  // Users 0..N/2 (inclusive) are seeded into H1.
  for (int x = 0; x <= n_users / 2 && x < n_users; ++x) in_h1[x] = 1;

  // Index order: each P_x only references lower-indexed users whose
  // membership is already settled.
  for (int x = 0; x < n_users; ++x) {
    double sum = 0.0;
    for (const auto& r : rounds) {
      if (r.x0 == x && r.x1 < x && in_h1[r.x1]) sum += r.p;
      else if (r.x1 == x && r.x0 < x && in_h1[r.x0]) sum += r.p;
    }
    px(x) = sum;
    if (x > n_users / 2) in_h1[x] = sum > 0.0 ? 1 : 0;
  }
}

LowerBoundRun lower_bound_run(int n_users, long t_rounds, uint64_t seed) {
  LowerBoundRun run;
  run.rounds = pm1_transcript(n_users, t_rounds, seed);
  build_h1(run.rounds, n_users, run.in_h1, run.px);
  for (const auto& r : run.rounds) {
    const bool both_h1 = run.in_h1[r.x0] && run.in_h1[r.x1];
    const bool both_h2 = !run.in_h1[r.x0] && !run.in_h1[r.x1];
    if (both_h1) run.opt_h1 += r.p;
    if (both_h2) run.opt_h2 += r.p;
  }
  return run;
}

LowerBoundStats lower_bound_gap(int n_users, long t_rounds, int n_seeds, uint64_t seed0) {
  if (n_seeds < 2) throw std::invalid_argument("lower_bound_gap: need at least two seeds");
  std::vector<double> gaps, h2s;
  gaps.reserve(n_seeds);
  for (int i = 0; i < n_seeds; ++i) {
    LowerBoundRun run = lower_bound_run(n_users, t_rounds, seed0 + static_cast<uint64_t>(i));
    gaps.push_back(run.opt_h1 + run.opt_h2);
    h2s.push_back(run.opt_h2);
  }
  auto mean_se = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= static_cast<double>(v.size() - 1);
    return std::pair<double, double>(m, std::sqrt(var / static_cast<double>(v.size())));
  };
  LowerBoundStats st;
  std::tie(st.mean_gap, st.stderr_gap) = mean_se(gaps);
  std::tie(st.mean_opt_h2, st.stderr_opt_h2) = mean_se(h2s);
  st.ratio = st.mean_gap / std::sqrt(static_cast<double>(n_users) * static_cast<double>(t_rounds));
  st.seeds = n_seeds;
  return st;
}

double planner_pm1_payoff(int n_users, long t_rounds, uint64_t seed) {
  std::vector<PmRound> rounds = pm1_transcript(n_users, t_rounds, seed);
  DoublingPlanner planner(n_users, /*rho=*/1.0);
  double total = 0.0;
  for (const auto& r : rounds) {
    const double s = planner.recommend(r.x0, r.x1);
    total += s * r.p;
    planner.update(r.x0, r.x1, r.p);
  }
  return total;
}

}  // namespace trustlab
