#include "pbne/te_scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace pbne {

using nlohmann::ordered_json;

namespace {

struct Field {
  const char* name;
  std::function<double&(TEParams&)> ref;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"training_cost_low", [](TEParams& p) -> double& { return p.training_cost_low; }},
      {"training_cost_high", [](TEParams& p) -> double& { return p.training_cost_high; }},
      {"legit_email_reward", [](TEParams& p) -> double& { return p.legit_email_reward; }},
      {"phishing_reward", [](TEParams& p) -> double& { return p.phishing_reward; }},
      {"legit_avatar_penalty", [](TEParams& p) -> double& { return p.legit_avatar_penalty; }},
      {"attacker_avatar_reward", [](TEParams& p) -> double& { return p.attacker_avatar_reward; }},
      {"training_penalty_low", [](TEParams& p) -> double& { return p.training_penalty_low; }},
      {"training_penalty_high", [](TEParams& p) -> double& { return p.training_penalty_high; }},
      {"legit_escalation_reward",
       [](TEParams& p) -> double& { return p.legit_escalation_reward; }},
      {"attacker_escalation_reward",
       [](TEParams& p) -> double& { return p.attacker_escalation_reward; }},
      {"restriction_payoff_low", [](TEParams& p) -> double& { return p.restriction_payoff_low; }},
      {"restriction_payoff_high",
       [](TEParams& p) -> double& { return p.restriction_payoff_high; }},
      {"detection_reward_low", [](TEParams& p) -> double& { return p.detection_reward_low; }},
      {"detection_reward_high", [](TEParams& p) -> double& { return p.detection_reward_high; }},
      {"monitoring_cost_low", [](TEParams& p) -> double& { return p.monitoring_cost_low; }},
      {"monitoring_cost_high", [](TEParams& p) -> double& { return p.monitoring_cost_high; }},
      {"normal_utility", [](TEParams& p) -> double& { return p.normal_utility; }},
      {"compromised_utility_0", [](TEParams& p) -> double& { return p.compromised_utility[0]; }},
      {"compromised_utility_1", [](TEParams& p) -> double& { return p.compromised_utility[1]; }},
      {"compromised_utility_2", [](TEParams& p) -> double& { return p.compromised_utility[2]; }},
      {"compromised_utility_3", [](TEParams& p) -> double& { return p.compromised_utility[3]; }},
      {"recon_attenuation", [](TEParams& p) -> double& { return p.recon_attenuation; }},
      {"prior_adversarial_user", [](TEParams& p) -> double& { return p.prior_adversarial_user; }},
      {"prior_sophisticated_defender",
       [](TEParams& p) -> double& { return p.prior_sophisticated_defender; }},
  };
  return table;
}

const Field& find_field(const std::string& name) {
  for (const Field& f : fields()) {
    if (name == f.name) return f;
  }
  throw ParamError("unknown parameter '" + name + "'");
}

}  // namespace

TEParams default_params() { return TEParams{}; }

std::vector<std::string> te_param_violations(const TEParams& p) {
  std::vector<std::string> out;
  TEParams copy = p;
  for (const Field& f : fields()) {
    if (!std::isfinite(f.ref(copy))) out.push_back(std::string(f.name) + " must be finite");
  }
  if (!out.empty()) return out;
  if (!(p.training_cost_low > 0.0)) out.push_back("training_cost_low must be positive");
  if (!(p.training_cost_high > p.training_cost_low)) {
    out.push_back("training_cost_high must exceed training_cost_low");
  }
  if (!(p.training_penalty_high > p.training_penalty_low)) {
    out.push_back("training_penalty_high must exceed training_penalty_low");
  }
  if (!(p.legit_avatar_penalty < 0.0)) out.push_back("legit_avatar_penalty must be negative");
  if (!(p.attacker_avatar_reward > 0.0)) out.push_back("attacker_avatar_reward must be positive");
  for (int x = 1; x < 4; ++x) {
    if (p.compromised_utility[x] > p.compromised_utility[x - 1]) {
      out.push_back("compromised_utility must be non-increasing in privilege level");
      break;
    }
  }
  for (double u : p.compromised_utility) {
    if (u > p.normal_utility) {
      out.push_back("compromised_utility must not exceed normal_utility");
      break;
    }
  }
  if (p.recon_attenuation < 0.0 || p.recon_attenuation > 1.0) {
    out.push_back("recon_attenuation must lie in [0, 1]");
  }
  if (p.prior_adversarial_user < 0.0 || p.prior_adversarial_user > 1.0) {
    out.push_back("prior_adversarial_user must lie in [0, 1]");
  }
  if (p.prior_sophisticated_defender < 0.0 || p.prior_sophisticated_defender > 1.0) {
    out.push_back("prior_sophisticated_defender must lie in [0, 1]");
  }
  return out;
}

void validate_te_params(const TEParams& p) {
  auto v = te_param_violations(p);
  if (!v.empty()) throw ParamError(v.front());
}

MultiStageGame build_te_game(const TEParams& p) {
  validate_te_params(p);
  using namespace te;
  MultiStageGame g;
  g.horizon = 2;
  g.types[kDefender] = {"sophisticated", "primitive"};
  g.types[kUser] = {"adversarial", "legitimate"};

  Stage s0;
  s0.states = {"ineffectual", "effectual"};
  s0.actions[kDefender] = {"no-training", "train-employees", "train-managers"};
  s0.actions[kUser] = {"email-employees", "email-managers", "email-avatars"};
  Stage s1;
  s1.states = {"quarantine", "employee", "manager"};
  s1.actions[kDefender] = {"permit", "restrict"};
  s1.actions[kUser] = {"nop", "escalate"};
  Stage s2;
  s2.states = {"privilege-0", "privilege-1", "privilege-2", "privilege-3"};
  s2.actions[kDefender] = {"selective-monitoring", "complete-monitoring"};
  s2.actions[kUser] = {"unencrypted-command", "encrypted-command"};
  g.stages = {s0, s1, s2};
  g.allocate();

  auto set = [&g](int k, int x, int a1, int a2, int t1, int t2, double u1, double u2) {
    g.utility(k, x, a1, a2, t1, t2, kDefender) = u1;
    g.utility(k, x, a1, a2, t1, t2, kUser) = u2;
  };

  for (int t1 = 0; t1 < 2; ++t1) {
    const bool high = t1 == kSophisticated;
    const double c0 = high ? p.training_cost_high : p.training_cost_low;
    const double r0 = high ? p.training_penalty_high : p.training_penalty_low;
    const double r1 = high ? p.restriction_payoff_high : p.restriction_payoff_low;
    const double r2 = high ? p.detection_reward_high : p.detection_reward_low;
    const double c2 = high ? p.monitoring_cost_high : p.monitoring_cost_low;

    // Initial stage; a1: no / employee / manager training, a2: email target.
    for (int x = 0; x < 2; ++x) {
      const double scale = x == kIneffectual ? p.recon_attenuation : 1.0;
      const double phish = scale * p.phishing_reward;
      const double fake = scale * p.attacker_avatar_reward;
      const int b = kAdversarial;
      const int gd = kLegitimate;
      for (int a2 = 0; a2 < 2; ++a2) {
        set(0, x, 0, a2, t1, b, -phish, phish);
        set(0, x, 0, a2, t1, gd, 0.0, p.legit_email_reward);
        for (int a1 = 1; a1 <= 2; ++a1) {
          // Training the targeted group turns the phish into a penalty.
          const bool trained = a1 - 1 == a2;
          set(0, x, a1, a2, t1, b, -c0, trained ? -r0 : phish);
          set(0, x, a1, a2, t1, gd, -c0, p.legit_email_reward);
        }
      }
      for (int a1 = 0; a1 < 3; ++a1) {
        const double cost = a1 == 0 ? 0.0 : -c0;
        set(0, x, a1, 2, t1, b, cost, fake);
        set(0, x, a1, 2, t1, gd, cost, p.legit_avatar_penalty);
      }
    }

    // Intermediate stage, identical at every location.
    for (int x = 0; x < 3; ++x) {
      for (int a1 = 0; a1 < 2; ++a1) {
        set(1, x, a1, 0, t1, kAdversarial, 0.0, 0.0);
        set(1, x, a1, 0, t1, kLegitimate, 0.0, 0.0);
      }
      set(1, x, 0, 1, t1, kAdversarial, -p.attacker_escalation_reward,
          p.attacker_escalation_reward);
      set(1, x, 0, 1, t1, kLegitimate, p.legit_escalation_reward, p.legit_escalation_reward);
      set(1, x, 1, 1, t1, kAdversarial, r1, -r1);
      set(1, x, 1, 1, t1, kLegitimate, -p.legit_escalation_reward, -p.legit_escalation_reward);
    }

    // Final stage.
    const double r4 = p.normal_utility;
    for (int x = 0; x < 4; ++x) {
      const double hit = p.compromised_utility[x];
      set(2, x, kSelectiveMonitoring, kUnencryptedCommand, t1, kAdversarial, r4, 0.0);
      set(2, x, kSelectiveMonitoring, kUnencryptedCommand, t1, kLegitimate, r4, r4 / 2);
      set(2, x, kSelectiveMonitoring, kEncryptedCommand, t1, kAdversarial, hit, r4 - hit);
      set(2, x, kSelectiveMonitoring, kEncryptedCommand, t1, kLegitimate, r4, r4);
      set(2, x, kCompleteMonitoring, kUnencryptedCommand, t1, kAdversarial, r4 - c2, 0.0);
      set(2, x, kCompleteMonitoring, kUnencryptedCommand, t1, kLegitimate, r4 - c2, r4 / 2);
      set(2, x, kCompleteMonitoring, kEncryptedCommand, t1, kAdversarial, r2 - c2, -r2);
      set(2, x, kCompleteMonitoring, kEncryptedCommand, t1, kLegitimate, r4 - c2, r4);
    }
  }

  // Email target decides the foothold; avatars lead to quarantine.
  for (int x = 0; x < 2; ++x) {
    for (int a1 = 0; a1 < 3; ++a1) {
      g.next_state(0, x, a1, 0) = 1;
      g.next_state(0, x, a1, 1) = 2;
      g.next_state(0, x, a1, 2) = 0;
    }
  }
  // Privilege level after the escalation attempt.
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      const bool escalated = a2 == 1 && a1 == 0;
      g.next_state(1, 0, a1, a2) = 0;
      g.next_state(1, 1, a1, a2) = escalated ? 2 : 1;
      g.next_state(1, 2, a1, a2) = escalated ? 3 : 2;
    }
  }

  const double pa = p.prior_adversarial_user;
  const double ps = p.prior_sophisticated_defender;
  g.priors[kDefender] = {{pa, 1.0 - pa}, {pa, 1.0 - pa}};
  g.priors[kUser] = {{ps, 1.0 - ps}, {ps, 1.0 - ps}};
  return g;
}

TEParams params_from_json(const ordered_json& doc, const TEParams& base) {
  if (!doc.is_object()) throw ParamError("parameter document must be a JSON object");
  TEParams p = base;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const Field& f = find_field(it.key());
    if (!it.value().is_number()) throw ParamError(it.key() + " must be a number");
    f.ref(p) = it.value().get<double>();
  }
  validate_te_params(p);
  return p;
}

TEParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open parameter file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ordered_json doc;
  try {
    doc = ordered_json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParamError(std::string("malformed parameter file: ") + e.what());
  }
  return params_from_json(doc);
}

ordered_json params_to_json(const TEParams& p) {
  ordered_json doc = ordered_json::object();
  TEParams copy = p;
  for (const Field& f : fields()) doc[f.name] = f.ref(copy);
  return doc;
}

std::vector<std::string> param_names() {
  std::vector<std::string> out;
  for (const Field& f : fields()) out.emplace_back(f.name);
  return out;
}

double get_param(const TEParams& p, const std::string& name) {
  TEParams copy = p;
  return find_field(name).ref(copy);
}

void set_param(TEParams& p, const std::string& name, double value) {
  find_field(name).ref(p) = value;
}

double te_per_hour_utility(const TEProcessEconomics& e) {
  if (!(e.production_rate >= 0.0) || !(e.product_quality >= 0.0 && e.product_quality <= 1.0) ||
      !(e.product_price >= 0.0) || !(e.operating_cost >= 0.0)) {
    throw ParamError("process economics out of range");
  }
  return e.production_rate * e.product_quality * e.product_price - e.operating_cost;
}

}  // namespace pbne
