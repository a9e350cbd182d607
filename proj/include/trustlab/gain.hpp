#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "trustlab/types.hpp"

namespace trustlab {

// Sparse per-round gain matrix over (user, label) indices, stored as the
// handful of explicitly written entries. The learner consumes the symmetrized
// form; inner products and l1 norms are taken over the entries as written.
class GainMatrix {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  GainMatrix() = default;

  void add(int row, int col, double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("gain entry must be finite");
    entries_.push_back({row, col, value});
  }

  const std::vector<Entry>& entries() const { return entries_; }

  bool empty() const { return entries_.empty(); }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e.value != 0.0) return false;
    return true;
  }

  // Sum of absolute values of the entries as written.
  double l1_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::abs(e.value);
    return s;
  }

  // <X, E> = sum over written entries of X(r,c) * value.
  double inner(const Matrix& x) const {
    double s = 0.0;
    for (const auto& e : entries_) s += x(e.row, e.col) * e.value;
    return s;
  }

  // Adds (E + E^T)/2 into a dense symmetric accumulator. For symmetric X this
  // preserves <X, E> and the entry-wise l1 norm.
  void accumulate_symmetrized(Matrix& dense) const {
    for (const auto& e : entries_) {
      if (e.row == e.col) {
        dense(e.row, e.col) += e.value;
      } else {
        dense(e.row, e.col) += 0.5 * e.value;
        dense(e.col, e.row) += 0.5 * e.value;
      }
    }
  }

 private:
  std::vector<Entry> entries_;
};

// Running sum of symmetrized gain matrices, in round order.
class CumulativeGain {
 public:
  explicit CumulativeGain(int n_users)
      : dense_(Matrix::Zero(label_dim(n_users), label_dim(n_users))), rounds_(0) {}

  void add(const GainMatrix& gain) {
    gain.accumulate_symmetrized(dense_);
    ++rounds_;
  }

  const Matrix& dense() const { return dense_; }
  long rounds() const { return rounds_; }

 private:
  Matrix dense_;
  long rounds_;
};

// The three-entry gain matrix built by the planner from one round's report.
// s is the pre-update interaction probability for the pair.
inline GainMatrix planner_gain(int a, int b, double reported_p, double s) {
  GainMatrix e;
  e.add(label_index(a, 0), label_index(b, 0), (1.0 - s) * reported_p);
  e.add(label_index(a, 0), label_index(b, 1), -s * reported_p);
  e.add(label_index(a, -1), label_index(b, 0), -s * reported_p);
  return e;
}

}  // namespace trustlab
