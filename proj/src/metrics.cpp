#include "trustlab/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace trustlab {

namespace {

std::vector<char> membership(const std::vector<int>& h, int n) {
  std::vector<char> in(n, 0);
  for (int u : h) {
    if (u < 0 || u >= n) throw std::invalid_argument("metrics: user out of range");
    in[u] = 1;
  }
  return in;
}

}  // namespace

double payoff_of_set(const SimulationTranscript& t, const std::vector<int>& h) {
  const int n = static_cast<int>(t.user_payoff.size());
  auto in = membership(h, n);
  double s = 0.0;
  for (int u = 0; u < n; ++u)
    if (in[u]) s += t.user_payoff(u);
  return s;
}

double opt_of_set(const SimulationTranscript& t, const std::vector<int>& h) {
  const int n = static_cast<int>(t.pair_opt.rows());
  auto in = membership(h, n);
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (in[a] && in[b]) s += t.pair_opt(a, b);
  return s;
}

RegretReport regret_report(const SimulationTranscript& t, const std::vector<int>& h) {
  RegretReport r;
  r.h = h;
  r.p_h = payoff_of_set(t, h);
  r.opt_h = opt_of_set(t, h);
  r.regret = r.opt_h - r.p_h;
  for (int u : h) r.per_user.emplace_back(u, t.user_payoff(u));
  return r;
}

FitResult regret_scaling_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4)
    throw std::invalid_argument("regret_scaling_fit: need at least 4 points");
  constexpr double kFloor = 1e-9;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& [t, regret] : points) {
    if (!(t > 0)) throw std::invalid_argument("regret_scaling_fit: T must be positive");
    const double x = std::log(t);
    const double y = std::log(std::max(regret, kFloor));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12 * n * sxx)
    throw std::invalid_argument("regret_scaling_fit: degenerate T values");
  FitResult f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

std::vector<std::vector<int>> sample_subsets(const std::vector<int>& pool, int count,
                                             uint64_t seed) {
  std::vector<std::vector<int>> subsets;
  const size_t n = pool.size();
  if (n == 0) return subsets;
  if (n <= 4) {
    for (uint64_t mask = 1; mask < (1ULL << n); ++mask) {
      std::vector<int> s;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1ULL << i)) s.push_back(pool[i]);
      subsets.push_back(std::move(s));
    }
    return subsets;
  }
  Beacon rng(seed);
  uint64_t counter = 0;
  while (static_cast<int>(subsets.size()) < count) {
    std::vector<int> s;
    for (size_t i = 0; i < n; ++i)
      if (rng.bits(17, counter * 64 + i) & 1) s.push_back(pool[i]);
    ++counter;
    if (!s.empty()) subsets.push_back(std::move(s));
  }
  return subsets;
}

}  // namespace trustlab
