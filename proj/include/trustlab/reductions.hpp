#pragma once

#include <optional>

#include "trustlab/types.hpp"

namespace trustlab {

// Honest-user reductions: payoff symmetrization via transfers or the
// log-wealth currency, and the SYM/FILTER report rules that turn a round's
// public record into the payoff fed to the planner.

// Full per-round record. Raw payoffs are nature's draws (recorded even when
// the interaction was declined, so the counterfactual benchmark is exactly
// computable); realized payoffs are zero unless both parties interacted.
struct RoundOutcome {
  long round = 0;
  int epoch = 0;
  int x0 = -1, x1 = -1;
  double s = 1.0;              // recommended interaction probability
  bool beacon_interact = false;
  int s0 = 0, s1 = 0;          // decisions taken
  bool interacted = false;
  double p0_raw = 0.0, p1_raw = 0.0;
  double p0 = 0.0, p1 = 0.0;
  std::optional<double> b0, b1;  // broadcast payoffs
  double tau0 = 0.0, tau1 = 0.0;
  double q0 = 0.0, q1 = 0.0;
  double w0_after = 0.0, w1_after = 0.0;
  double reported_p = 0.0;
  bool violation = false;  // a -rho report was triggered
  bool clamped = false;
  bool solver_ok = true;
};

// What every observer sees of the two parties' broadcasts in one round.
// decision -1 encodes "no broadcast"; multiple marks duplicate broadcasts.
struct BroadcastView {
  int decision0 = -1;
  int decision1 = -1;
  std::optional<double> payoff0;
  std::optional<double> payoff1;
  bool multiple0 = false;
  bool multiple1 = false;
};

struct StepReport {
  double reported_p = 0.0;
  bool interacted = false;
  bool violation = false;
};

// SYM: both parties must echo the beacon's decision, broadcast equal
// in-range payoffs (0 when there was no interaction), and the report is
// payoff/s, 0, or -rho on any violation.
StepReport sym_step(double s, bool beacon_interact, const BroadcastView& view, double rho);

// FILTER: x1 is a resource and always interacts; only x0's broadcasts are
// checked.
StepReport filter_step(double s, bool beacon_interact, const BroadcastView& view, double rho);

struct TransferResult {
  double tau_own = 0.0;  // >= 0
  double q_own = 0.0;
};

// Transfer reduction: the higher-payoff party pays half the difference, so
// that q0 = q1 = (p0 + p1)/2 exactly for honest pairs. A missing or invalid
// partner message degrades to tau = 0 and q = own payoff.
TransferResult transfer_symmetrize(double p_own, std::optional<double> p_partner, double rho);

// Per-user balances for the ex-ante currency reduction. Balances start at 1,
// stay positive, move by at most a factor (1 +- delta) per round, and their
// sum is conserved.
class WealthLedger {
 public:
  WealthLedger(int n_users, double delta, double rho);

  int size() const { return static_cast<int>(w_.size()); }
  double delta() const { return delta_; }
  double rho() const { return rho_; }
  double wealth(int user) const { return w_(user); }
  const Vector& balances() const { return w_; }
  double total() const { return w_.sum(); }

  void apply(int x0, int x1, double tau0, double tau1);

 private:
  Vector w_;
  double delta_;
  double rho_;
};

struct ExAnteResult {
  double tau0 = 0.0, tau1 = 0.0;
  double q0 = 0.0, q1 = 0.0;
  bool degraded = false;  // invalid message path, tau = 0
};

// Ex-ante currency reduction for one interaction. Claims are the payoff
// messages the two parties exchanged; honest parties claim their true
// payoff. tau0 + tau1 == 0 exactly, |tau_i| <= delta * w_i, and for valid
// claims q0 == q1 == (w0 p0 + w1 p1)/(w0 + w1) bit-identically, so honest
// broadcasts can be compared exactly. The ledger is updated in place.
ExAnteResult exante_symmetrize(std::optional<double> p0_claim, std::optional<double> p1_claim,
                               WealthLedger& ledger, int x0, int x1);

// U(x) = (2 rho / delta) log w(x) + cumulative payoff of x.
double potential(const WealthLedger& ledger, int user, double cumulative_payoff);

}  // namespace trustlab
