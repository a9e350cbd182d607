#include "trustlab/reductions.hpp"

#include <cmath>
#include <stdexcept>

namespace trustlab {

namespace {

bool payoff_in_range(double p, double rho) {
  return std::isfinite(p) && p >= -rho && p <= rho;
}

bool valid_claim(const std::optional<double>& claim, double rho) {
  return claim.has_value() && payoff_in_range(*claim, rho);
}

}  // namespace

StepReport sym_step(double s, bool beacon_interact, const BroadcastView& view, double rho) {
  StepReport r;
  const int mandated = beacon_interact ? 1 : 0;

  bool bad = view.multiple0 || view.multiple1;
  // Disagreement with the independently derived beacon decision.
  bad = bad || view.decision0 != mandated || view.decision1 != mandated;
  bad = bad || !view.payoff0.has_value() || !view.payoff1.has_value();
  if (!bad) {
    bad = !payoff_in_range(*view.payoff0, rho) || !payoff_in_range(*view.payoff1, rho);
    // Interacting parties must broadcast the same payoff; after a declined
    // round the protocol broadcasts 0.
    bad = bad || *view.payoff0 != *view.payoff1;
    bad = bad || (!beacon_interact && (*view.payoff0 != 0.0 || *view.payoff1 != 0.0));
  }

  if (bad) {
    r.reported_p = -rho;
    r.violation = true;
    r.interacted = false;
    return r;
  }
  r.interacted = beacon_interact;
  r.reported_p = r.interacted ? *view.payoff0 / s : 0.0;
  return r;
}

StepReport filter_step(double s, bool beacon_interact, const BroadcastView& view, double rho) {
  StepReport r;
  const int mandated = beacon_interact ? 1 : 0;

  bool bad = view.multiple0;
  bad = bad || view.decision0 != mandated;
  bad = bad || !view.payoff0.has_value();
  if (!bad) {
    bad = !payoff_in_range(*view.payoff0, rho);
    bad = bad || (!beacon_interact && *view.payoff0 != 0.0);
  }

  if (bad) {
    r.reported_p = -rho;
    r.violation = true;
    r.interacted = false;
    return r;
  }
  r.interacted = beacon_interact;  // the resource side always interacts
  r.reported_p = r.interacted ? *view.payoff0 / s : 0.0;
  return r;
}

TransferResult transfer_symmetrize(double p_own, std::optional<double> p_partner, double rho) {
  if (!payoff_in_range(p_own, rho))
    throw std::invalid_argument("transfer_symmetrize: own payoff out of range");
  TransferResult r;
  if (!valid_claim(p_partner, rho)) {
    r.tau_own = 0.0;
    r.q_own = p_own;
    return r;
  }
  r.tau_own = std::max(0.5 * (p_own - *p_partner), 0.0);
  // Canonical symmetric value; bit-identical on both sides of the exchange.
  r.q_own = 0.5 * (p_own + *p_partner);
  return r;
}

WealthLedger::WealthLedger(int n_users, double delta, double rho)
    : w_(Vector::Ones(n_users)), delta_(delta), rho_(rho) {
  if (n_users < 1) throw std::invalid_argument("WealthLedger: need at least one user");
  if (!(delta > 0.0) || delta >= 0.5)
    throw std::invalid_argument("WealthLedger: delta must lie in (0, 1/2)");
  if (!(rho > 0.0)) throw std::invalid_argument("WealthLedger: rho must be positive");
}

void WealthLedger::apply(int x0, int x1, double tau0, double tau1) {
  if (x0 < 0 || x1 < 0 || x0 >= size() || x1 >= size() || x0 == x1)
    throw std::invalid_argument("WealthLedger::apply: bad pair");
  w_(x0) += tau0;
  w_(x1) += tau1;
}

ExAnteResult exante_symmetrize(std::optional<double> p0_claim, std::optional<double> p1_claim,
                               WealthLedger& ledger, int x0, int x1) {
  ExAnteResult r;
  const double rho = ledger.rho();
  if (!valid_claim(p0_claim, rho) || !valid_claim(p1_claim, rho)) {
    r.degraded = true;
    r.q0 = valid_claim(p0_claim, rho) ? *p0_claim : 0.0;
    r.q1 = valid_claim(p1_claim, rho) ? *p1_claim : 0.0;
    return r;
  }
  const double w0 = ledger.wealth(x0);
  const double w1 = ledger.wealth(x1);
  const double delta = ledger.delta();

  r.tau0 = delta * w0 * w1 * (*p1_claim - *p0_claim) / (2.0 * rho * (w0 + w1));
  r.tau1 = -r.tau0;
  // Weighted average computed once so both parties broadcast the same bits.
  const double q = (w0 * *p0_claim + w1 * *p1_claim) / (w0 + w1);
  r.q0 = q;
  r.q1 = q;
  ledger.apply(x0, x1, r.tau0, r.tau1);
  return r;
}

double potential(const WealthLedger& ledger, int user, double cumulative_payoff) {
  const double w = ledger.wealth(user);
  if (!(w > 0.0)) throw std::domain_error("potential: wealth must be positive");
  return 2.0 * ledger.rho() / ledger.delta() * std::log(w) + cumulative_payoff;
}

}  // namespace trustlab
