#include "trustlab/agents.hpp"

#include <algorithm>
#include <stdexcept>

namespace trustlab {

AgentStrategy strategy_from_string(const std::string& s) {
  AgentStrategy a;
  std::string name = s;
  std::string arg;
  if (auto pos = s.find(':'); pos != std::string::npos) {
    name = s.substr(0, pos);
    arg = s.substr(pos + 1);
  }
  if (name == "honest") {
    a.kind = StrategyKind::kHonest;
  } else if (name == "resource") {
    a.kind = StrategyKind::kResource;
  } else if (name == "defector") {
    a.kind = StrategyKind::kDefector;
  } else if (name == "misreporter") {
    a.kind = StrategyKind::kMisreporter;
    a.param = arg.empty() ? 0.5 : std::stod(arg);
  } else if (name == "hoarder") {
    a.kind = StrategyKind::kHoarder;
    a.param = arg.empty() ? 0.25 : std::stod(arg);
  } else if (name == "colluder") {
    a.kind = StrategyKind::kColluder;
    a.group = arg.empty() ? 1 : std::stoi(arg);
  } else if (name == "silent") {
    a.kind = StrategyKind::kSilent;
  } else {
    throw std::invalid_argument("unknown strategy: " + s);
  }
  return a;
}

std::string to_string(const AgentStrategy& s) {
  switch (s.kind) {
    case StrategyKind::kHonest: return "honest";
    case StrategyKind::kResource: return "resource";
    case StrategyKind::kDefector: return "defector";
    case StrategyKind::kMisreporter: return "misreporter:" + std::to_string(s.param);
    case StrategyKind::kHoarder: return "hoarder:" + std::to_string(s.param);
    case StrategyKind::kColluder: return "colluder:" + std::to_string(s.group);
    case StrategyKind::kSilent: return "silent";
  }
  return "unknown";
}

DecisionAction agent_decide(const AgentStrategy& strat, const AgentView& view) {
  const int mandated = view.beacon_interact ? 1 : 0;
  auto announced = [](int d) { return DecisionAction{d, d}; };
  switch (strat.kind) {
    case StrategyKind::kHonest:
      return announced(mandated);
    case StrategyKind::kResource:
      return announced(1);
    case StrategyKind::kDefector:
      // Free-rider: takes favors, refuses to give them.
      return announced(view.is_giver ? 0 : mandated);
    case StrategyKind::kMisreporter:
    case StrategyKind::kHoarder:
      return announced(mandated);
    case StrategyKind::kColluder:
      if (view.partner_in_group) return announced(mandated);
      return announced(view.is_giver ? 0 : mandated);
    case StrategyKind::kSilent:
      // Participates but never announces anything.
      return DecisionAction{mandated, -1};
  }
  return announced(mandated);
}

std::optional<double> agent_message(const AgentStrategy& strat, const AgentView& view) {
  switch (strat.kind) {
    case StrategyKind::kHonest:
    case StrategyKind::kResource:
    case StrategyKind::kDefector:
    case StrategyKind::kMisreporter:
    case StrategyKind::kColluder:
      return view.true_payoff;
    case StrategyKind::kHoarder:
      // Understating the payoff makes the counterparty appear to owe more,
      // so the hoarder's balance creeps up.
      return std::clamp(view.true_payoff - strat.param, -view.rho, view.rho);
    case StrategyKind::kSilent:
      return std::nullopt;
  }
  return view.true_payoff;
}

BroadcastAction agent_broadcast(const AgentStrategy& strat, const AgentView& view) {
  BroadcastAction b;
  switch (strat.kind) {
    case StrategyKind::kHonest:
    case StrategyKind::kResource:
    case StrategyKind::kDefector:
    case StrategyKind::kHoarder:
      // The hoarder keeps its broadcast consistent with the exchanged
      // messages; the lie lives in the message, not the broadcast.
      b.payoff = view.canonical_broadcast;
      break;
    case StrategyKind::kMisreporter:
      b.payoff = view.canonical_broadcast + strat.param;
      break;
    case StrategyKind::kColluder:
      b.payoff = view.partner_in_group && view.beacon_interact ? view.rho
                                                               : view.canonical_broadcast;
      break;
    case StrategyKind::kSilent:
      b.payoff = std::nullopt;
      break;
  }
  return b;
}

}  // namespace trustlab
