#pragma once

#include <Eigen/Dense>

namespace trustlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Users carry one of three labels {-1, 0, +1}. Matrices over (user, label)
// pairs are indexed row/col = 3*user + (label+1), labels ordered (-1, 0, 1).
// Every module shares this layout.
inline int label_index(int user, int label) { return 3 * user + label + 1; }

inline int label_dim(int n_users) { return 3 * n_users; }

inline double inf_norm(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace trustlab
