#include "trustlab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "trustlab/metrics.hpp"
#include "trustlab/version.hpp"

namespace trustlab {

using nlohmann::json;

namespace {

json nature_to_json(const NatureConfig& n) {
  json j;
  j["kind"] = to_string(n.kind);
  j["benefit_epsilon"] = n.benefit_epsilon;
  j["mean_scale"] = n.mean_scale;
  j["noise_scale"] = n.noise_scale;
  if (!n.resources.empty()) j["resources"] = n.resources;
  if (!n.script.empty()) {
    json rounds = json::array();
    for (const auto& r : n.script)
      rounds.push_back({{"x0", r.x0}, {"x1", r.x1}, {"p0", r.p0}, {"p1", r.p1}});
    j["script"] = rounds;
  }
  return j;
}

NatureConfig nature_from_json(const json& j) {
  NatureConfig n;
  n.kind = nature_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("benefit_epsilon")) n.benefit_epsilon = j["benefit_epsilon"].get<double>();
  if (j.contains("mean_scale")) n.mean_scale = j["mean_scale"].get<double>();
  if (j.contains("noise_scale")) n.noise_scale = j["noise_scale"].get<double>();
  if (j.contains("resources")) n.resources = j["resources"].get<std::vector<int>>();
  if (j.contains("script")) {
    for (const auto& r : j["script"]) {
      ScriptedRound sr;
      sr.x0 = r.at("x0").get<int>();
      sr.x1 = r.at("x1").get<int>();
      sr.p0 = r.at("p0").get<double>();
      sr.p1 = r.at("p1").get<double>();
      n.script.push_back(sr);
    }
  }
  return n;
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  json j = json::parse(text);
  SimConfig cfg;
  cfg.n_users = j.at("n_users").get<int>();
  cfg.n_rounds = j.at("n_rounds").get<long>();
  cfg.rho = j.at("rho").get<double>();
  cfg.nature = nature_from_json(j.at("nature"));
  cfg.nature.rho = cfg.rho;
  for (const auto& s : j.at("strategies"))
    cfg.strategies.push_back(strategy_from_string(s.get<std::string>()));
  if (j.contains("honest_set")) cfg.honest_set = j["honest_set"].get<std::vector<int>>();
  cfg.protocol = protocol_from_string(j.at("protocol").get<std::string>());
  cfg.seed = j.value("seed", 0ULL);
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  cfg.doubling = j.value("doubling", true);
  cfg.replicate_planners = j.value("replicate_planners", false);
  cfg.record_rounds = j.value("record_rounds", true);
  cfg.record_wealth = j.value("record_wealth", false);
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    cfg.solver.max_outer = s.value("max_outer", cfg.solver.max_outer);
    cfg.solver.max_proj = s.value("max_proj", cfg.solver.max_proj);
    cfg.solver.step_tol = s.value("step_tol", cfg.solver.step_tol);
    cfg.solver.feas_tol = s.value("feas_tol", cfg.solver.feas_tol);
  }
  validate_config(cfg);
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

std::string config_json_text(const SimConfig& cfg) {
  json j;
  j["n_users"] = cfg.n_users;
  j["n_rounds"] = cfg.n_rounds;
  j["rho"] = cfg.rho;
  j["nature"] = nature_to_json(cfg.nature);
  json strategies = json::array();
  for (const auto& s : cfg.strategies) strategies.push_back(to_string(s));
  j["strategies"] = strategies;
  if (!cfg.honest_set.empty()) j["honest_set"] = cfg.honest_set;
  j["protocol"] = to_string(cfg.protocol);
  j["seed"] = cfg.seed;
  if (cfg.delta) j["delta"] = *cfg.delta;
  if (cfg.epsilon) j["epsilon"] = *cfg.epsilon;
  j["doubling"] = cfg.doubling;
  j["replicate_planners"] = cfg.replicate_planners;
  j["record_rounds"] = cfg.record_rounds;
  j["record_wealth"] = cfg.record_wealth;
  return j.dump(2);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_transcript_csv(const std::string& path, const SimulationTranscript& t) {
  std::ostringstream os;
  os << "round,epoch,a,b,s,s0,s1,p0_raw,p1_raw,p0,p1,b0,b1,tau0,tau1,q0,q1,"
        "w0_after,w1_after,reported_p,flag\n";
  for (const auto& r : t.rounds) {
    int flag = (r.violation ? 1 : 0) | (r.clamped ? 2 : 0) | (r.solver_ok ? 0 : 4);
    os << r.round << ',' << r.epoch << ',' << r.x0 << ',' << r.x1 << ','
       << format_double(r.s) << ',' << r.s0 << ',' << r.s1 << ','
       << format_double(r.p0_raw) << ',' << format_double(r.p1_raw) << ','
       << format_double(r.p0) << ',' << format_double(r.p1) << ','
       << (r.b0 ? format_double(*r.b0) : "") << ',' << (r.b1 ? format_double(*r.b1) : "") << ','
       << format_double(r.tau0) << ',' << format_double(r.tau1) << ','
       << format_double(r.q0) << ',' << format_double(r.q1) << ','
       << format_double(r.w0_after) << ',' << format_double(r.w1_after) << ','
       << format_double(r.reported_p) << ',' << flag << '\n';
  }
  write_text_file(path, os.str());
}

std::string summary_json_text(const SimulationTranscript& t, const std::vector<int>& h) {
  RegretReport rep = regret_report(t, h);
  json j;
  j["version"] = kVersion;
  j["config"] = json::parse(config_json_text(t.config));
  j["honest_set"] = h;
  j["p_H"] = rep.p_h;
  j["opt_H"] = rep.opt_h;
  j["regret"] = rep.regret;
  json per_user = json::array();
  for (int u = 0; u < t.config.n_users; ++u) {
    per_user.push_back({{"user", u},
                        {"strategy", to_string(t.config.strategies[u])},
                        {"payoff", t.user_payoff(u)},
                        {"raw_payoff", t.user_raw_payoff(u)}});
  }
  j["per_user"] = per_user;
  j["violations"] = t.violations;
  j["clamped"] = t.clamped;
  j["solver_failures"] = t.solver_failures;
  j["transcript_hash"] = transcript_hash(t);
  return j.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace trustlab
