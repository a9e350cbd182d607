#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trustlab/beacon.hpp"

namespace trustlab {

// Honest agents follow the configured reduction exactly. Adversarial agents
// may deviate arbitrarily in decisions, messages and broadcasts, but they
// can only reach other agents through those channels.

enum class StrategyKind {
  kHonest,
  kResource,     // always interacts, payoff 0; the filtering x1 side
  kDefector,     // accepts favors, declines beacon-mandated giving
  kMisreporter,  // biases its payoff broadcasts by +param
  kHoarder,      // understates its payoff messages by param to bank wealth
  kColluder,     // pumps broadcasts for in-group pairs, defects otherwise
  kSilent,       // broadcasts and messages nothing
};

struct AgentStrategy {
  StrategyKind kind = StrategyKind::kHonest;
  double param = 0.0;
  int group = 0;

  bool honest() const {
    return kind == StrategyKind::kHonest || kind == StrategyKind::kResource;
  }
};

AgentStrategy strategy_from_string(const std::string& s);
std::string to_string(const AgentStrategy& s);

// Everything an agent may see when acting: public round data plus its own
// private payoff and role.
struct AgentView {
  int self = 0;
  int partner = 0;
  int side = 0;  // 0 => x0
  long round = 0;
  double s = 1.0;
  bool beacon_interact = false;
  bool is_giver = false;       // favor role, known privately before deciding
  double true_payoff = 0.0;    // realized payoff, available after interaction
  double canonical_broadcast = 0.0;  // the value an honest party would broadcast
  bool partner_in_group = false;
  double rho = 1.0;
};

// Phase 1: the interaction decision this agent takes, and what it announces
// (-1 encodes no broadcast; the two differ only for lurking strategies).
struct DecisionAction {
  int taken = 0;
  int broadcast = -1;
};
DecisionAction agent_decide(const AgentStrategy& strat, const AgentView& view);

// Phase 2: the payoff message sent to the partner (transfer/ex-ante layers).
std::optional<double> agent_message(const AgentStrategy& strat, const AgentView& view);

// Phase 3: the payoff broadcast.
struct BroadcastAction {
  std::optional<double> payoff;
  bool multiple = false;
};
BroadcastAction agent_broadcast(const AgentStrategy& strat, const AgentView& view);

}  // namespace trustlab
