#pragma once

#include <optional>
#include <vector>

#include "trustlab/gain.hpp"
#include "trustlab/types.hpp"

namespace trustlab {

// Online local learning step: maximize
//     epsilon * <X, G> + logdet(X + I)
// over symmetric X >= 0 (PSD) with every entry in [0, 1]. The objective is
// strictly concave on the feasible set, so the maximizer is unique.
//
// The solver is projected gradient ascent with backtracking line search;
// feasibility is restored each step by Dykstra's corrected alternating
// projections onto the PSD cone and the box.

struct OllOptions {
  double feas_tol = 1e-8;    // eigenvalue / box slack accepted as feasible
  double proj_tol = 1e-8;    // Dykstra stopping measure
  double step_tol = 1e-10;   // stop when accepted |dX|_inf falls below
  double obj_rel_tol = 1e-13;  // stop on stalled relative objective change
  int max_outer = 5000;
  int max_proj = 1000;
};

struct ProjectionResult {
  Matrix value;
  bool converged = true;
  double residual = 0.0;
  int iterations = 0;
};

struct LearnerSolution {
  Matrix x;
  double objective = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

// Nearest point (Frobenius norm) of {X PSD} ∩ {entries in [0,1]}.
ProjectionResult project_feasible(const Matrix& m, const OllOptions& opts = {});

// epsilon * <X, G> + logdet(X + I). Throws std::domain_error if X + I is not
// positive definite.
double objective_value(const Matrix& x, const Matrix& cumulative, double epsilon);

// Solves the program above. warm_start, when given, seeds the iteration (it
// is projected to the feasible set first); otherwise the identity is used,
// which is the exact optimum for G = 0. Identical inputs (matrix, epsilon,
// options, warm start) give bit-identical outputs.
LearnerSolution oll_solve(const Matrix& cumulative, double epsilon,
                          const OllOptions& opts = {},
                          const Matrix* warm_start = nullptr);

// Feasibility check against the learner's invariants.
bool is_feasible(const Matrix& x, double tol);

// Replays the prefix-solve sequence over an ordered list of gains and
// returns sum_t <E^t, OLL(E^{<t})> - sum_t <E^t, reference>. Positive means
// the learner beat the reference. Throws if the reference is infeasible.
double oll_regret_gap(const std::vector<GainMatrix>& gains, const Matrix& reference,
                      double epsilon, int n_users, const OllOptions& opts = {});

}  // namespace trustlab
