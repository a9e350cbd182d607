#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trustlab/agents.hpp"
#include "trustlab/nature.hpp"
#include "trustlab/oll.hpp"
#include "trustlab/reductions.hpp"
#include "trustlab/types.hpp"

namespace trustlab {

// Deterministic multi-agent simulation: nature draws pairs and payoffs, the
// configured protocol mediates interaction decisions and reports, and the
// transcript records enough to replay and score everything exactly.

enum class Protocol {
  kSym,       // symmetric payoffs, broadcasts compared directly
  kFilter,    // collaborative filtering, x1 is a resource
  kTransfer,  // transfer reduction on top of SYM
  kExAnte,    // log-wealth currency reduction on top of SYM
  kNaive,     // baseline: no planner, honest users always interact
};

Protocol protocol_from_string(const std::string& s);
std::string to_string(Protocol p);

struct SimConfig {
  int n_users = 2;
  long n_rounds = 1;
  double rho = 1.0;
  NatureConfig nature;
  std::vector<AgentStrategy> strategies;
  std::vector<int> honest_set;  // empty: derived from strategies
  Protocol protocol = Protocol::kSym;
  uint64_t seed = 0;
  std::optional<double> delta;    // default min(sqrt(N/T), 0.4)
  std::optional<double> epsilon;  // default min(N^{2/3} T^{-2/3}, 1/16 - 1e-6)
  bool doubling = true;           // anytime wrapper vs fixed-rate PLAN
  bool replicate_planners = false;
  bool record_rounds = true;
  bool record_wealth = false;
  OllOptions solver;
};

void validate_config(const SimConfig& cfg);
std::vector<int> default_honest_set(const SimConfig& cfg);

struct SimulationTranscript {
  SimConfig config;
  std::vector<RoundOutcome> rounds;  // empty when record_rounds is off
  Vector user_payoff;      // realized payoffs incl. transfer adjustments
  Vector user_raw_payoff;  // realized payoffs before transfers
  Matrix pair_opt;         // sum of (p0_raw + p1_raw) per ordered pair
  std::vector<Vector> wealth_history;  // per-round balances when recorded
  Matrix final_p;
  long violations = 0;
  long clamped = 0;
  long solver_failures = 0;
  double final_delta = 0.0;
  double final_epsilon = 0.0;
};

SimulationTranscript run_simulation(const SimConfig& cfg);

// Stable digest over the per-round records; equal configs give equal hashes.
uint64_t transcript_hash(const SimulationTranscript& t);

double epoch_delta(int n_users, long horizon);

}  // namespace trustlab
