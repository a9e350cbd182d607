#include "trustlab/oll.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace trustlab {

namespace {

Matrix psd_project(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  Vector lam = eig.eigenvalues().cwiseMax(0.0);
  Matrix out = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
  return ((out + out.transpose()) * 0.5).eval();
}

Matrix box_clamp(const Matrix& m) {
  return m.cwiseMax(0.0).cwiseMin(1.0);
}

void require_symmetric_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": not square");
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  if (inf_norm(m - m.transpose()) > 1e-9 * (1.0 + inf_norm(m)))
    throw std::invalid_argument(std::string(what) + ": not symmetric");
}

// logdet(X + I) via Cholesky; nullopt when X + I is not positive definite.
std::optional<double> logdet_shifted(const Matrix& x) {
  Matrix shifted = x + Matrix::Identity(x.rows(), x.cols());
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() != Eigen::Success) return std::nullopt;
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

ProjectionResult project_feasible(const Matrix& m, const OllOptions& opts) {
  require_symmetric_finite(m, "project_feasible");
  const int d = static_cast<int>(m.rows());

  ProjectionResult res;
  Matrix y = (0.5 * (m + m.transpose())).eval();
  Matrix p = Matrix::Zero(d, d);  // correction for the PSD projection
  Matrix q = Matrix::Zero(d, d);  // correction for the box projection
  Matrix x = y;

  // Dykstra with the Birgin-Raydan stopping measure on correction increments.
  for (int it = 1; it <= opts.max_proj; ++it) {
    Matrix yp = psd_project(y + p);
    Matrix p_new = y + p - yp;
    Matrix x_new = box_clamp(yp + q);
    Matrix q_new = yp + q - x_new;

    double r = std::sqrt((p_new - p).squaredNorm() + (q_new - q).squaredNorm());
    p.swap(p_new);
    q.swap(q_new);
    y = x_new;
    x.swap(x_new);
    res.iterations = it;
    res.residual = r;
    if (r <= opts.proj_tol) {
      res.value = std::move(x);
      res.converged = true;
      return res;
    }
  }
  res.value = std::move(x);
  res.converged = false;
  return res;
}

double objective_value(const Matrix& x, const Matrix& cumulative, double epsilon) {
  require_symmetric_finite(x, "objective_value: X");
  if (cumulative.rows() != x.rows() || cumulative.cols() != x.cols())
    throw std::invalid_argument("objective_value: dimension mismatch");
  auto ld = logdet_shifted(x);
  if (!ld) throw std::domain_error("objective_value: X + I is not positive definite");
  return epsilon * x.cwiseProduct(cumulative).sum() + *ld;
}

bool is_feasible(const Matrix& x, double tol) {
  if (inf_norm(x - x.transpose()) > 1e-12 * (1.0 + inf_norm(x))) return false;
  if (x.minCoeff() < -tol || x.maxCoeff() > 1.0 + tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(x, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

LearnerSolution oll_solve(const Matrix& cumulative, double epsilon,
                          const OllOptions& opts, const Matrix* warm_start) {
  if (epsilon <= 0.0) throw std::invalid_argument("oll_solve: epsilon must be positive");
  require_symmetric_finite(cumulative, "oll_solve: cumulative");
  const int d = static_cast<int>(cumulative.rows());

  const Matrix a = (epsilon * 0.5 * (cumulative + cumulative.transpose())).eval();

  Matrix x;
  if (warm_start != nullptr) {
    x = project_feasible(*warm_start, opts).value;
  } else {
    x = Matrix::Identity(d, d);
  }

  auto objective = [&](const Matrix& v) -> std::optional<double> {
    auto ld = logdet_shifted(v);
    if (!ld) return std::nullopt;
    return a.cwiseProduct(v).sum() + *ld;
  };

  LearnerSolution sol;
  double f = objective(x).value_or(-std::numeric_limits<double>::infinity());
  double step = 1.0;
  constexpr double kArmijo = 1e-4;
  constexpr double kStepMin = 1e-14;
  constexpr double kStepMax = 64.0;
  int stalled = 0;
  bool converged = false;

  int it = 0;
  for (; it < opts.max_outer; ++it) {
    // grad = eps*G + (X+I)^{-1}
    Matrix shifted = x + Matrix::Identity(d, d);
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() != Eigen::Success) {
      // Iterate drifted outside the domain; re-project and retry once.
      x = project_feasible(x, opts).value;
      shifted = x + Matrix::Identity(d, d);
      llt.compute(shifted);
      if (llt.info() != Eigen::Success) break;
      f = objective(x).value_or(f);
    }
    Matrix grad = a + llt.solve(Matrix::Identity(d, d));
    grad = (0.5 * (grad + grad.transpose())).eval();

    // Backtracking along the projection arc.
    bool accepted = false;
    Matrix cand;
    double f_cand = f;
    double dx_inf = 0.0;
    while (step >= kStepMin) {
      cand = project_feasible(x + step * grad, opts).value;
      auto fc = objective(cand);
      if (fc) {
        double gain_lower = kArmijo * grad.cwiseProduct(cand - x).sum();
        if (*fc >= f + gain_lower) {
          f_cand = *fc;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No ascent direction left at the smallest step: numerically optimal.
      converged = true;
      ++it;
      break;
    }

    dx_inf = inf_norm(cand - x);
    x.swap(cand);
    double df = f_cand - f;
    f = f_cand;
    sol.residual = dx_inf;
    step = std::min(step * 2.0, kStepMax);

    if (dx_inf <= opts.step_tol) {
      converged = true;
      ++it;
      break;
    }
    if (std::abs(df) <= opts.obj_rel_tol * std::max(1.0, std::abs(f))) {
      if (++stalled >= 3) {
        converged = true;
        ++it;
        break;
      }
    } else {
      stalled = 0;
    }
  }

  sol.x = std::move(x);
  sol.objective = f;
  sol.iterations = it;
  sol.converged = converged || sol.residual <= opts.step_tol;
  return sol;
}

double oll_regret_gap(const std::vector<GainMatrix>& gains, const Matrix& reference,
                      double epsilon, int n_users, const OllOptions& opts) {
  const int d = label_dim(n_users);
  if (reference.rows() != d || reference.cols() != d)
    throw std::invalid_argument("oll_regret_gap: reference has wrong dimension");
  if (!is_feasible(reference, opts.feas_tol))
    throw std::invalid_argument("oll_regret_gap: reference is infeasible");

  CumulativeGain cum(n_users);
  Matrix x = Matrix::Identity(d, d);  // OLL(0)
  double learner = 0.0, ref = 0.0;
  for (const auto& e : gains) {
    learner += e.inner(x);
    ref += e.inner(reference);
    cum.add(e);
    LearnerSolution next = oll_solve(cum.dense(), epsilon, opts, &x);
    if (!next.converged)
      throw std::runtime_error("oll_regret_gap: solver failed to converge");
    x = std::move(next.x);
  }
  return learner - ref;
}

}  // namespace trustlab
