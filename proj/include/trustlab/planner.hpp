#pragma once

#include <cstdint>
#include <vector>

#include "trustlab/gain.hpp"
#include "trustlab/oll.hpp"
#include "trustlab/types.hpp"

namespace trustlab {

// Central planner loop. Keeps an N x N matrix P of interaction
// probabilities, feeds per-round gain matrices to the learner, derives cut
// and join rates from the learner's solution and relaxes P toward their
// steady state. Learning rate must satisfy 0 < epsilon < 1/16 so that
// J + C <= 1 and P stays inside [sqrt(epsilon), 1].

inline constexpr double kEpsilonMax = 1.0 / 16.0;

struct CutJoin {
  Matrix cut;   // C_ab >= 0
  Matrix join;  // J_ab >= sqrt(epsilon)
};

struct PlannerState {
  int n_users = 0;
  double epsilon = 0.0;
  double rho = 1.0;
  long round = 0;
  Matrix p;            // N x N interaction probabilities
  CumulativeGain cumulative{1};
  Matrix x;            // current learner solution, 3N x 3N
  CutJoin cj;          // derived from x
  long clamped_reports = 0;
  long solver_failures = 0;
};

struct PlanUpdateResult {
  bool clamped = false;           // |p * s| exceeded rho and was clamped
  bool solver_converged = true;
};

PlannerState plan_init(int n_users, double epsilon, double rho);

// s = P_ab, read-only. a != b, both in range.
double plan_recommend(const PlannerState& state, int a, int b);

// One PLAN_epsilon step: build the gain matrix from (a, b, reported_p),
// re-solve the learner on the cumulative gain, derive cut/join, relax every
// pair of P toward the steady state.
PlanUpdateResult plan_update(PlannerState& state, int a, int b, double reported_p,
                             const OllOptions& opts = {});

// Cut/join blocks read off a learner solution.
CutJoin cut_join_from(const Matrix& x, double epsilon, int n_users);

// Y = J / (J + C), entry-wise; well-defined since J >= sqrt(epsilon) > 0.
Matrix steady_state(const CutJoin& cj);

// The update operator applied with an arbitrary feasible learner matrix:
// U(P, X)_ab = (1 - C_ab - J_ab) P_ab + J_ab.
Matrix update_with(const Matrix& p, const Matrix& x, double epsilon, int n_users);

// Rank-one labeling witness X^H = v v^T with v one-hot per user: label 0 for
// members of H, label +1 (side 0) or -1 (side 1) for non-members.
Matrix witness_matrix(const std::vector<int>& h, int side, int n_users);

struct EpochSchedule {
  int epoch = 0;        // k
  long start_round = 0; // 2^k (0 for the initial state)
  double epsilon = 0.0; // min(N^{2/3} 2^{-2k/3}, 1/16 - 1e-6)
};

double doubling_epsilon(int n_users, long horizon);
EpochSchedule epoch_for_round(int n_users, long round);

// Anytime wrapper: restarts PLAN_epsilon with a fresh state every time the
// round counter reaches a power of two, with the learning rate retuned to
// the new horizon.
class DoublingPlanner {
 public:
  DoublingPlanner(int n_users, double rho, const OllOptions& opts = {});

  double recommend(int a, int b);
  PlanUpdateResult update(int a, int b, double reported_p);

  long round() const { return round_; }
  int epoch() const { return epoch_; }
  const PlannerState& state() const { return state_; }

 private:
  void maybe_restart();

  int n_users_;
  double rho_;
  OllOptions opts_;
  long round_ = 0;
  long next_restart_ = 1;
  int epoch_ = 0;
  PlannerState state_;
};

}  // namespace trustlab
