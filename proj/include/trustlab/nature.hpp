#pragma once

#include <string>
#include <vector>

#include "trustlab/beacon.hpp"

namespace trustlab {

enum class NatureKind {
  kFavor,            // giver pays 1, receiver gets 0 or rho (mean 1 + eps_b)
  kSymmetricRandom,  // p0 == p1, per-pair mean plus noise
  kExAnteSymmetric,  // E[p0] == E[p1] given the pair; realizations differ
  kFiltering,        // x1 drawn from resources, p1 == 0
  kAdversarialPm1,   // p0 == p1 uniform +-1 (lower-bound nature)
  kScripted,
};

struct ScriptedRound {
  int x0 = 0, x1 = 1;
  double p0 = 0.0, p1 = 0.0;
};

struct NatureConfig {
  NatureKind kind = NatureKind::kFavor;
  double rho = 4.0;
  double benefit_epsilon = 0.2;  // favor surplus
  double mean_scale = 0.5;       // per-pair mean amplitude
  double noise_scale = 0.5;      // per-round noise amplitude
  std::vector<int> resources;    // filtering targets
  std::vector<ScriptedRound> script;
};

struct NatureDraw {
  int x0 = 0, x1 = 1;
  int giver = -1;  // favor game: 0 or 1, which side pays the cost
  double p0_raw = 0.0, p1_raw = 0.0;
};

// (p_giver, p_receiver) for one favor opportunity. Requires rho > 1 + eps_b.
std::pair<double, double> favor_payoff_draw(const Beacon& beacon, long round, int direction,
                                            double rho, double benefit_epsilon);

void validate_nature(const NatureConfig& cfg, int n_users);

// Pure function of (config, seed, round): pair selection and counterfactual
// payoffs, drawn whether or not the interaction later happens.
NatureDraw draw_nature(const NatureConfig& cfg, const Beacon& beacon, int n_users, long round);

NatureKind nature_kind_from_string(const std::string& s);
std::string to_string(NatureKind kind);

}  // namespace trustlab
