#include "trustlab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "trustlab/planner.hpp"

namespace trustlab {

Protocol protocol_from_string(const std::string& s) {
  if (s == "sym") return Protocol::kSym;
  if (s == "filter") return Protocol::kFilter;
  if (s == "transfer") return Protocol::kTransfer;
  if (s == "exante") return Protocol::kExAnte;
  if (s == "naive") return Protocol::kNaive;
  throw std::invalid_argument("unknown protocol: " + s);
}

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::kSym: return "sym";
    case Protocol::kFilter: return "filter";
    case Protocol::kTransfer: return "transfer";
    case Protocol::kExAnte: return "exante";
    case Protocol::kNaive: return "naive";
  }
  return "unknown";
}

double epoch_delta(int n_users, long horizon) {
  return std::min(std::sqrt(static_cast<double>(n_users) / static_cast<double>(horizon)), 0.4);
}

void validate_config(const SimConfig& cfg) {
  if (cfg.n_users < 2) throw std::invalid_argument("config: n_users must be >= 2");
  if (cfg.n_rounds < 1) throw std::invalid_argument("config: n_rounds must be >= 1");
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("config: rho must be positive");
  if (static_cast<int>(cfg.strategies.size()) != cfg.n_users)
    throw std::invalid_argument("config: one strategy per user required");
  NatureConfig nature = cfg.nature;
  nature.rho = cfg.rho;
  validate_nature(nature, cfg.n_users);
  for (int u : cfg.honest_set)
    if (u < 0 || u >= cfg.n_users) throw std::invalid_argument("config: honest_set out of range");
  if (cfg.epsilon && (!(*cfg.epsilon > 0.0) || *cfg.epsilon >= kEpsilonMax))
    throw std::invalid_argument("config: epsilon must lie in (0, 1/16)");
  if (cfg.delta && (!(*cfg.delta > 0.0) || *cfg.delta >= 0.5))
    throw std::invalid_argument("config: delta must lie in (0, 1/2)");
  if (cfg.protocol == Protocol::kFilter) {
    if (cfg.nature.kind != NatureKind::kFiltering)
      throw std::invalid_argument("config: filter protocol needs the filtering nature");
    for (int r : cfg.nature.resources)
      if (cfg.strategies[r].kind != StrategyKind::kResource)
        throw std::invalid_argument("config: filtering resources need the resource strategy");
  }
}

std::vector<int> default_honest_set(const SimConfig& cfg) {
  if (!cfg.honest_set.empty()) return cfg.honest_set;
  std::vector<int> h;
  for (int u = 0; u < cfg.n_users; ++u)
    if (cfg.strategies[u].honest()) h.push_back(u);
  return h;
}

namespace {

// One planner interface over both the fixed-rate and doubling variants.
class PlannerDriver {
 public:
  PlannerDriver(const SimConfig& cfg, double fixed_epsilon)
      : doubling_(cfg.doubling), opts_(cfg.solver) {
    if (doubling_) {
      dp_ = std::make_unique<DoublingPlanner>(cfg.n_users, cfg.rho, opts_);
    } else {
      state_ = plan_init(cfg.n_users, fixed_epsilon, cfg.rho);
    }
  }

  double recommend(int a, int b) {
    return doubling_ ? dp_->recommend(a, b) : plan_recommend(state_, a, b);
  }

  PlanUpdateResult update(int a, int b, double p) {
    return doubling_ ? dp_->update(a, b, p) : plan_update(state_, a, b, p, opts_);
  }

  const PlannerState& state() const { return doubling_ ? dp_->state() : state_; }
  int epoch() const { return doubling_ ? dp_->epoch() : 0; }

 private:
  bool doubling_;
  OllOptions opts_;
  std::unique_ptr<DoublingPlanner> dp_;
  PlannerState state_;
};

bool is_power_of_two(long t) { return t > 0 && (t & (t - 1)) == 0; }

void check_p_bounds(const PlannerState& st, long round) {
  const double lo = std::sqrt(st.epsilon) - 1e-9;
  const double hi = 1.0 + 1e-9;
  if (st.p.minCoeff() < lo || st.p.maxCoeff() > hi)
    throw std::logic_error("round " + std::to_string(round) + ": P left [sqrt(eps), 1]");
}

void check_replicas(const std::vector<std::unique_ptr<PlannerDriver>>& replicas,
                    const PlannerState& canonical, long round) {
  for (const auto& r : replicas) {
    const Matrix& a = r->state().p;
    const Matrix& b = canonical.p;
    if (a.rows() != b.rows() ||
        std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) != 0)
      throw std::logic_error("round " + std::to_string(round) + ": planner replicas diverged");
  }
}

}  // namespace

SimulationTranscript run_simulation(const SimConfig& cfg) {
  validate_config(cfg);

  const int n = cfg.n_users;
  const double rho = cfg.rho;
  Beacon beacon(cfg.seed);

  NatureConfig nature = cfg.nature;
  nature.rho = rho;

  const double fixed_eps = cfg.epsilon.value_or(doubling_epsilon(n, cfg.n_rounds));
  const double fixed_delta = cfg.delta.value_or(epoch_delta(n, cfg.n_rounds));

  SimulationTranscript out;
  out.config = cfg;
  out.user_payoff = Vector::Zero(n);
  out.user_raw_payoff = Vector::Zero(n);
  out.pair_opt = Matrix::Zero(n, n);
  out.final_epsilon = fixed_eps;
  out.final_delta = fixed_delta;

  const bool uses_planner = cfg.protocol != Protocol::kNaive;
  std::unique_ptr<PlannerDriver> planner;
  std::vector<std::unique_ptr<PlannerDriver>> replicas;
  if (uses_planner) {
    planner = std::make_unique<PlannerDriver>(cfg, fixed_eps);
    if (cfg.replicate_planners) {
      for (int u = 0; u < n; ++u)
        if (cfg.strategies[u].honest())
          replicas.push_back(std::make_unique<PlannerDriver>(cfg, fixed_eps));
    }
  }

  std::unique_ptr<WealthLedger> ledger;
  auto reset_ledger = [&](long horizon) {
    double delta = cfg.doubling ? epoch_delta(n, horizon) : fixed_delta;
    if (cfg.delta) delta = *cfg.delta;
    ledger = std::make_unique<WealthLedger>(n, delta, rho);
    out.final_delta = delta;
  };
  if (cfg.protocol == Protocol::kExAnte) reset_ledger(1);

  if (cfg.record_rounds) out.rounds.reserve(static_cast<size_t>(cfg.n_rounds));

  for (long t = 0; t < cfg.n_rounds; ++t) {
    // The doubling wrapper restarts the whole protocol, ledger included.
    if (cfg.protocol == Protocol::kExAnte && cfg.doubling && is_power_of_two(t))
      reset_ledger(t);

    NatureDraw draw = draw_nature(nature, beacon, n, t);
    out.pair_opt(draw.x0, draw.x1) += draw.p0_raw + draw.p1_raw;

    RoundOutcome row;
    row.round = t;
    row.x0 = draw.x0;
    row.x1 = draw.x1;
    row.p0_raw = draw.p0_raw;
    row.p1_raw = draw.p1_raw;

    const AgentStrategy& strat0 = cfg.strategies[draw.x0];
    const AgentStrategy& strat1 = cfg.strategies[draw.x1];
    const bool same_group = strat0.kind == StrategyKind::kColluder &&
                            strat1.kind == StrategyKind::kColluder &&
                            strat0.group == strat1.group;

    double s = 1.0;
    bool mandated = true;
    if (uses_planner) {
      s = planner->recommend(draw.x0, draw.x1);
      row.epoch = planner->epoch();
      mandated = beacon.uniform(stream::kBeacon, static_cast<uint64_t>(t)) < s;
    }
    row.s = s;
    row.beacon_interact = mandated;

    AgentView v0, v1;
    v0.self = draw.x0; v0.partner = draw.x1; v0.side = 0;
    v1.self = draw.x1; v1.partner = draw.x0; v1.side = 1;
    v0.round = v1.round = t;
    v0.s = v1.s = s;
    v0.beacon_interact = v1.beacon_interact = mandated;
    v0.is_giver = draw.giver == 0;
    v1.is_giver = draw.giver == 1;
    v0.partner_in_group = v1.partner_in_group = same_group;
    v0.rho = v1.rho = rho;

    DecisionAction d0 = agent_decide(strat0, v0);
    DecisionAction d1 = cfg.protocol == Protocol::kFilter ? DecisionAction{1, 1}
                                                          : agent_decide(strat1, v1);
    if (cfg.protocol == Protocol::kNaive) {
      // Baseline: honest users take every opportunity.
      if (strat0.honest()) d0 = {1, 1};
      if (strat1.honest()) d1 = {1, 1};
    }
    row.s0 = d0.taken == 1 ? 1 : 0;
    row.s1 = d1.taken == 1 ? 1 : 0;
    row.interacted = row.s0 == 1 && row.s1 == 1;

    if (row.interacted) {
      row.p0 = draw.p0_raw;
      row.p1 = draw.p1_raw;
    }
    v0.true_payoff = row.p0;
    v1.true_payoff = row.p1;

    // Reduction layer: exchanged messages and the canonical broadcast value.
    double canonical0 = 0.0, canonical1 = 0.0;
    if (row.interacted) {
      switch (cfg.protocol) {
        case Protocol::kSym:
          canonical0 = row.p0;
          canonical1 = row.p1;
          break;
        case Protocol::kFilter:
          canonical0 = row.p0;
          break;
        case Protocol::kTransfer: {
          std::optional<double> m0 = agent_message(strat0, v0);
          std::optional<double> m1 = agent_message(strat1, v1);
          TransferResult side0 = transfer_symmetrize(row.p0, m1, rho);
          TransferResult side1 = transfer_symmetrize(row.p1, m0, rho);
          // Payments follow the exchanged messages when both arrived.
          if (m0 && m1 && std::abs(*m0) <= rho && std::abs(*m1) <= rho) {
            row.tau0 = std::max(0.5 * (*m0 - *m1), 0.0);
            row.tau1 = std::max(0.5 * (*m1 - *m0), 0.0);
          }
          row.q0 = side0.q_own;
          row.q1 = side1.q_own;
          canonical0 = side0.q_own;
          canonical1 = side1.q_own;
          break;
        }
        case Protocol::kExAnte: {
          std::optional<double> m0 = agent_message(strat0, v0);
          std::optional<double> m1 = agent_message(strat1, v1);
          ExAnteResult r = exante_symmetrize(m0, m1, *ledger, draw.x0, draw.x1);
          row.tau0 = r.tau0;
          row.tau1 = r.tau1;
          // An honest party with a garbled partner message falls back to its
          // own payoff; the canonical value is only shared on the clean path.
          row.q0 = r.degraded ? row.p0 : r.q0;
          row.q1 = r.degraded ? row.p1 : r.q1;
          canonical0 = row.q0;
          canonical1 = row.q1;
          break;
        }
        case Protocol::kNaive:
          break;
      }
    }
    if (cfg.protocol == Protocol::kExAnte && ledger) {
      row.w0_after = ledger->wealth(draw.x0);
      row.w1_after = ledger->wealth(draw.x1);
    }

    // Broadcast phase and report derivation.
    if (uses_planner) {
      v0.canonical_broadcast = canonical0;
      v1.canonical_broadcast = canonical1;
      BroadcastAction b0 = agent_broadcast(strat0, v0);
      BroadcastAction b1 = agent_broadcast(strat1, v1);
      row.b0 = b0.payoff;
      row.b1 = b1.payoff;

      BroadcastView view;
      view.decision0 = d0.broadcast;
      view.decision1 = d1.broadcast;
      view.payoff0 = b0.payoff;
      view.payoff1 = b1.payoff;
      view.multiple0 = b0.multiple;
      view.multiple1 = b1.multiple;

      StepReport rep = cfg.protocol == Protocol::kFilter
                           ? filter_step(s, mandated, view, rho)
                           : sym_step(s, mandated, view, rho);
      row.reported_p = rep.reported_p;
      row.violation = rep.violation;
      if (rep.violation) ++out.violations;

      PlanUpdateResult ur = planner->update(draw.x0, draw.x1, rep.reported_p);
      row.clamped = ur.clamped;
      row.solver_ok = ur.solver_converged;
      if (ur.clamped) ++out.clamped;
      if (!ur.solver_converged) ++out.solver_failures;

      for (auto& rp : replicas) {
        double rs = rp->recommend(draw.x0, draw.x1);
        if (rs != s)
          throw std::logic_error("round " + std::to_string(t) + ": replica recommendation diverged");
        StepReport rrep = cfg.protocol == Protocol::kFilter
                              ? filter_step(rs, mandated, view, rho)
                              : sym_step(rs, mandated, view, rho);
        if (rrep.reported_p != rep.reported_p)
          throw std::logic_error("round " + std::to_string(t) + ": replica report diverged");
        rp->update(draw.x0, draw.x1, rrep.reported_p);
      }
      if (!replicas.empty()) check_replicas(replicas, planner->state(), t);
      check_p_bounds(planner->state(), t);
    }

    // Scoring: realized payoffs, plus real transfer adjustments.
    if (row.interacted) {
      out.user_raw_payoff(draw.x0) += row.p0;
      out.user_raw_payoff(draw.x1) += row.p1;
      double adj0 = 0.0, adj1 = 0.0;
      if (cfg.protocol == Protocol::kTransfer) {
        adj0 = row.tau1 - row.tau0;
        adj1 = row.tau0 - row.tau1;
      }
      out.user_payoff(draw.x0) += row.p0 + adj0;
      out.user_payoff(draw.x1) += row.p1 + adj1;
    }

    if (cfg.protocol == Protocol::kExAnte && ledger) {
      const Vector& w = ledger->balances();
      if (w.minCoeff() <= 0.0)
        throw std::logic_error("round " + std::to_string(t) + ": wealth hit zero");
      if (std::abs(w.sum() - n) > 1e-9)
        throw std::logic_error("round " + std::to_string(t) + ": wealth sum drifted");
      if (cfg.record_wealth) out.wealth_history.push_back(w);
    }

    if (cfg.record_rounds) out.rounds.push_back(row);
  }

  if (uses_planner) out.final_p = planner->state().p;
  return out;
}

uint64_t transcript_hash(const SimulationTranscript& t) {
  uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  auto mixd = [&](double d) {
    uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    mix(bits);
  };
  for (const auto& r : t.rounds) {
    mix(static_cast<uint64_t>(r.round));
    mix(static_cast<uint64_t>(r.x0) << 32 | static_cast<uint64_t>(r.x1));
    mix(static_cast<uint64_t>(r.s0) << 1 | static_cast<uint64_t>(r.s1));
    mix(r.interacted ? 1 : 0);
    mixd(r.s);
    mixd(r.p0_raw);
    mixd(r.p1_raw);
    mixd(r.p0);
    mixd(r.p1);
    mixd(r.tau0);
    mixd(r.tau1);
    mixd(r.q0);
    mixd(r.q1);
    mixd(r.w0_after);
    mixd(r.w1_after);
    mixd(r.reported_p);
    mix(r.violation ? 1 : 0);
  }
  for (int u = 0; u < t.user_payoff.size(); ++u) mixd(t.user_payoff(u));
  return h;
}

}  // namespace trustlab
