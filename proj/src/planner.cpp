#include "trustlab/planner.hpp"

#include <cmath>
#include <stdexcept>

namespace trustlab {

namespace {

void check_pair(const PlannerState& state, int a, int b) {
  if (a < 0 || b < 0 || a >= state.n_users || b >= state.n_users)
    throw std::invalid_argument("planner: user index out of range");
  if (a == b) throw std::invalid_argument("planner: a and b must differ");
}

}  // namespace

PlannerState plan_init(int n_users, double epsilon, double rho) {
  if (n_users < 2) throw std::invalid_argument("plan_init: need at least two users");
  if (!(epsilon > 0.0) || epsilon >= kEpsilonMax)
    throw std::invalid_argument("plan_init: epsilon must lie in (0, 1/16)");
  if (!(rho > 0.0)) throw std::invalid_argument("plan_init: rho must be positive");

  PlannerState s;
  s.n_users = n_users;
  s.epsilon = epsilon;
  s.rho = rho;
  s.round = 0;
  s.p = Matrix::Ones(n_users, n_users);
  s.cumulative = CumulativeGain(n_users);
  s.x = Matrix::Identity(label_dim(n_users), label_dim(n_users));  // OLL(0)
  s.cj = cut_join_from(s.x, epsilon, n_users);
  return s;
}

double plan_recommend(const PlannerState& state, int a, int b) {
  check_pair(state, a, b);
  return state.p(a, b);
}

CutJoin cut_join_from(const Matrix& x, double epsilon, int n_users) {
  const double root_eps = std::sqrt(epsilon);
  CutJoin cj;
  cj.cut = Matrix::Zero(n_users, n_users);
  cj.join = Matrix::Zero(n_users, n_users);
  for (int a = 0; a < n_users; ++a) {
    for (int b = 0; b < n_users; ++b) {
      cj.cut(a, b) = 0.25 * x(label_index(a, 0), label_index(b, 1)) +
                     0.25 * x(label_index(a, -1), label_index(b, 0));
      cj.join(a, b) = 0.25 * x(label_index(a, 0), label_index(b, 0)) + root_eps;
    }
  }
  return cj;
}

Matrix steady_state(const CutJoin& cj) {
  return cj.join.cwiseQuotient(cj.join + cj.cut);
}

Matrix update_with(const Matrix& p, const Matrix& x, double epsilon, int n_users) {
  CutJoin cj = cut_join_from(x, epsilon, n_users);
  return ((Matrix::Ones(n_users, n_users) - cj.cut - cj.join).cwiseProduct(p) + cj.join)
      .eval();
}

PlanUpdateResult plan_update(PlannerState& state, int a, int b, double reported_p,
                             const OllOptions& opts) {
  check_pair(state, a, b);
  if (!std::isfinite(reported_p))
    throw std::invalid_argument("plan_update: reported payoff must be finite");

  PlanUpdateResult res;
  const double s = state.p(a, b);

  // Protocol layers guarantee |p * s| <= rho; clamp and flag otherwise.
  double p_used = reported_p;
  if (std::abs(reported_p) * s > state.rho) {
    p_used = std::copysign(state.rho / s, reported_p);
    res.clamped = true;
    ++state.clamped_reports;
  }

  GainMatrix gain = planner_gain(a, b, p_used, s);
  const bool zero_gain = gain.is_zero();
  state.cumulative.add(gain);

  if (!zero_gain) {
    // A zero gain leaves the program, and hence its unique maximizer,
    // unchanged; skip the solve in that case.
    LearnerSolution next =
        oll_solve(state.cumulative.dense(), state.epsilon / state.rho, opts, &state.x);
    res.solver_converged = next.converged;
    if (!next.converged) ++state.solver_failures;
    state.x = std::move(next.x);
    state.cj = cut_join_from(state.x, state.epsilon, state.n_users);
  }

  state.p = ((Matrix::Ones(state.n_users, state.n_users) - state.cj.cut - state.cj.join)
                 .cwiseProduct(state.p) +
             state.cj.join)
                .eval();
  ++state.round;
  return res;
}

Matrix witness_matrix(const std::vector<int>& h, int side, int n_users) {
  if (h.empty()) throw std::invalid_argument("witness_matrix: H must be nonempty");
  if (side != 0 && side != 1) throw std::invalid_argument("witness_matrix: side is 0 or 1");
  std::vector<bool> in_h(n_users, false);
  for (int u : h) {
    if (u < 0 || u >= n_users) throw std::invalid_argument("witness_matrix: user out of range");
    in_h[u] = true;
  }
  const int outside_label = side == 0 ? 1 : -1;
  Vector v = Vector::Zero(label_dim(n_users));
  for (int u = 0; u < n_users; ++u)
    v(label_index(u, in_h[u] ? 0 : outside_label)) = 1.0;
  return v * v.transpose();
}

double doubling_epsilon(int n_users, long horizon) {
  const double raw = std::pow(static_cast<double>(n_users), 2.0 / 3.0) *
                     std::pow(static_cast<double>(horizon), -2.0 / 3.0);
  return std::min(raw, kEpsilonMax - 1e-6);
}

EpochSchedule epoch_for_round(int n_users, long round) {
  EpochSchedule e;
  if (round <= 0) {
    e.epoch = 0;
    e.start_round = 0;
    e.epsilon = doubling_epsilon(n_users, 1);
    return e;
  }
  int k = 0;
  while ((1L << (k + 1)) <= round) ++k;
  e.epoch = k;
  e.start_round = 1L << k;
  e.epsilon = doubling_epsilon(n_users, e.start_round);
  return e;
}

DoublingPlanner::DoublingPlanner(int n_users, double rho, const OllOptions& opts)
    : n_users_(n_users),
      rho_(rho),
      opts_(opts),
      state_(plan_init(n_users, doubling_epsilon(n_users, 1), rho)) {}

void DoublingPlanner::maybe_restart() {
  if (round_ == next_restart_) {
    EpochSchedule sched = epoch_for_round(n_users_, round_);
    epoch_ = sched.epoch;
    state_ = plan_init(n_users_, sched.epsilon, rho_);
    next_restart_ *= 2;
  }
}

double DoublingPlanner::recommend(int a, int b) {
  maybe_restart();
  return plan_recommend(state_, a, b);
}

PlanUpdateResult DoublingPlanner::update(int a, int b, double reported_p) {
  maybe_restart();
  PlanUpdateResult res = plan_update(state_, a, b, reported_p, opts_);
  ++round_;
  return res;
}

}  // namespace trustlab
