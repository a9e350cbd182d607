#include "trustlab/nature.hpp"

#include <stdexcept>

namespace trustlab {

namespace {

// Symmetric per-pair latent mean in [-1, 1], independent of the draw order.
double pair_latent(const Beacon& beacon, int a, int b, uint64_t salt) {
  if (a > b) std::swap(a, b);
  uint64_t key = (static_cast<uint64_t>(a) << 20) ^ static_cast<uint64_t>(b) ^ (salt << 40);
  return 2.0 * beacon.uniform(stream::kNaturePayoff ^ 0x5152535455565758ULL, key) - 1.0;
}

}  // namespace

std::pair<double, double> favor_payoff_draw(const Beacon& beacon, long round, int direction,
                                            double rho, double benefit_epsilon) {
  if (!(rho > 1.0 + benefit_epsilon))
    throw std::invalid_argument("favor_payoff_draw: requires rho > 1 + benefit_epsilon");
  const double u = beacon.uniform(stream::kNaturePayoff, 4 * static_cast<uint64_t>(round) +
                                                             static_cast<uint64_t>(direction));
  const double benefit = u < (1.0 + benefit_epsilon) / rho ? rho : 0.0;
  return {-1.0, benefit};
}

void validate_nature(const NatureConfig& cfg, int n_users) {
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("nature: rho must be positive");
  switch (cfg.kind) {
    case NatureKind::kFavor:
      if (!(cfg.rho > 1.0 + cfg.benefit_epsilon))
        throw std::invalid_argument("nature: favor game needs rho > 1 + benefit_epsilon");
      break;
    case NatureKind::kSymmetricRandom:
    case NatureKind::kExAnteSymmetric:
    case NatureKind::kFiltering:
      if (cfg.mean_scale + cfg.noise_scale > cfg.rho)
        throw std::invalid_argument("nature: mean_scale + noise_scale must not exceed rho");
      break;
    case NatureKind::kAdversarialPm1:
      if (cfg.rho < 1.0) throw std::invalid_argument("nature: +-1 payoffs need rho >= 1");
      break;
    case NatureKind::kScripted:
      if (cfg.script.empty()) throw std::invalid_argument("nature: empty script");
      break;
  }
  if (cfg.kind == NatureKind::kFiltering) {
    if (cfg.resources.empty())
      throw std::invalid_argument("nature: filtering needs a resource set");
    for (int r : cfg.resources)
      if (r < 0 || r >= n_users) throw std::invalid_argument("nature: resource out of range");
    if (static_cast<int>(cfg.resources.size()) >= n_users)
      throw std::invalid_argument("nature: at least one non-resource user required");
  }
}

NatureDraw draw_nature(const NatureConfig& cfg, const Beacon& beacon, int n_users, long round) {
  NatureDraw d;
  const uint64_t t = static_cast<uint64_t>(round);

  if (cfg.kind == NatureKind::kScripted) {
    const ScriptedRound& r = cfg.script[static_cast<size_t>(round) % cfg.script.size()];
    d.x0 = r.x0;
    d.x1 = r.x1;
    d.p0_raw = r.p0;
    d.p1_raw = r.p1;
    return d;
  }

  if (cfg.kind == NatureKind::kFiltering) {
    std::vector<char> is_resource(n_users, 0);
    for (int r : cfg.resources) is_resource[r] = 1;
    std::vector<int> users;
    for (int u = 0; u < n_users; ++u)
      if (!is_resource[u]) users.push_back(u);
    d.x0 = users[beacon.below(stream::kNaturePair, 2 * t, users.size())];
    d.x1 = cfg.resources[beacon.below(stream::kNaturePair, 2 * t + 1, cfg.resources.size())];
    const double quality = cfg.mean_scale * pair_latent(beacon, d.x0, d.x1, 7);
    const double noise =
        cfg.noise_scale * (2.0 * beacon.uniform(stream::kNaturePayoff, 2 * t) - 1.0);
    d.p0_raw = quality + noise;
    d.p1_raw = 0.0;
    return d;
  }

  // Uniform over ordered pairs x0 != x1.
  d.x0 = static_cast<int>(beacon.below(stream::kNaturePair, 2 * t, n_users));
  d.x1 = static_cast<int>(beacon.below(stream::kNaturePair, 2 * t + 1, n_users - 1));
  if (d.x1 >= d.x0) ++d.x1;

  switch (cfg.kind) {
    case NatureKind::kFavor: {
      d.giver = static_cast<int>(beacon.below(stream::kNaturePayoff, 4 * t + 2, 2));
      auto [cost, benefit] = favor_payoff_draw(beacon, round, d.giver, cfg.rho, cfg.benefit_epsilon);
      if (d.giver == 0) {
        d.p0_raw = cost;
        d.p1_raw = benefit;
      } else {
        d.p0_raw = benefit;
        d.p1_raw = cost;
      }
      break;
    }
    case NatureKind::kSymmetricRandom: {
      const double mean = cfg.mean_scale * pair_latent(beacon, d.x0, d.x1, 3);
      const double noise =
          cfg.noise_scale * (2.0 * beacon.uniform(stream::kNaturePayoff, 2 * t) - 1.0);
      d.p0_raw = d.p1_raw = mean + noise;
      break;
    }
    case NatureKind::kExAnteSymmetric: {
      const double mean = cfg.mean_scale * pair_latent(beacon, d.x0, d.x1, 5);
      const double n0 = cfg.noise_scale * (2.0 * beacon.uniform(stream::kNaturePayoff, 2 * t) - 1.0);
      const double n1 =
          cfg.noise_scale * (2.0 * beacon.uniform(stream::kNaturePayoff, 2 * t + 1) - 1.0);
      d.p0_raw = mean + n0;
      d.p1_raw = mean + n1;
      break;
    }
    case NatureKind::kAdversarialPm1: {
      const double p = beacon.below(stream::kNaturePayoff, 2 * t, 2) == 0 ? -1.0 : 1.0;
      d.p0_raw = d.p1_raw = p;
      break;
    }
    default:
      throw std::logic_error("draw_nature: unhandled kind");
  }
  return d;
}

NatureKind nature_kind_from_string(const std::string& s) {
  if (s == "favor") return NatureKind::kFavor;
  if (s == "symmetric-random") return NatureKind::kSymmetricRandom;
  if (s == "exante-symmetric") return NatureKind::kExAnteSymmetric;
  if (s == "filtering") return NatureKind::kFiltering;
  if (s == "adversarial-pm1") return NatureKind::kAdversarialPm1;
  if (s == "scripted") return NatureKind::kScripted;
  throw std::invalid_argument("unknown nature kind: " + s);
}

std::string to_string(NatureKind kind) {
  switch (kind) {
    case NatureKind::kFavor: return "favor";
    case NatureKind::kSymmetricRandom: return "symmetric-random";
    case NatureKind::kExAnteSymmetric: return "exante-symmetric";
    case NatureKind::kFiltering: return "filtering";
    case NatureKind::kAdversarialPm1: return "adversarial-pm1";
    case NatureKind::kScripted: return "scripted";
  }
  return "unknown";
}

}  // namespace trustlab
