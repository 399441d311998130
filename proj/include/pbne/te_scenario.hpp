#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbne/game.hpp"

namespace pbne {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters of the three-stage phishing / escalation / sensor-compromise
// game. "low" and "high" refer to the primitive and sophisticated defender.
struct TEParams {
  // Initial stage: phishing emails.
  double training_cost_low = 1.0;
  double training_cost_high = 7.0;
  double legit_email_reward = 12.0;
  double phishing_reward = 26.0;
  double legit_avatar_penalty = -13.0;
  double attacker_avatar_reward = 4.0;
  double training_penalty_low = 13.0;
  double training_penalty_high = 34.0;

  // Intermediate stage: privilege escalation.
  double legit_escalation_reward = 23.0;
  double attacker_escalation_reward = 12.0;
  double restriction_payoff_low = 27.0;
  double restriction_payoff_high = 29.0;

  // Final stage: sensor compromise.
  double detection_reward_low = 60.0;
  double detection_reward_high = 75.0;
  double monitoring_cost_low = 10.0;
  double monitoring_cost_high = 14.0;
  double normal_utility = 100.0;
  // Defender utility after a successful compromise, per privilege level.
  std::array<double, 4> compromised_utility{95.0, 70.0, 50.0, 30.0};

  // Scale on the attacker's initial-stage rewards when reconnaissance was
  // ineffectual.
  double recon_attenuation = 0.5;
  double prior_adversarial_user = 0.5;
  double prior_sophisticated_defender = 0.5;
};

TEParams default_params();

// Every violated constraint, one message each.
std::vector<std::string> te_param_violations(const TEParams& p);
// Throws ParamError naming the first violated constraint.
void validate_te_params(const TEParams& p);

// Labels used by the built game.
namespace te {
inline constexpr int kSophisticated = 0;
inline constexpr int kPrimitive = 1;
inline constexpr int kAdversarial = 0;
inline constexpr int kLegitimate = 1;
inline constexpr int kIneffectual = 0;
inline constexpr int kEffectual = 1;
inline constexpr int kFinalStage = 2;
// Final-stage actions.
inline constexpr int kSelectiveMonitoring = 0;
inline constexpr int kCompleteMonitoring = 1;
inline constexpr int kUnencryptedCommand = 0;
inline constexpr int kEncryptedCommand = 1;
}  // namespace te

MultiStageGame build_te_game(const TEParams& p);

// Flat JSON of named reals. Missing keys keep the value of `base`; unknown
// keys are rejected.
TEParams params_from_json(const nlohmann::ordered_json& doc, const TEParams& base = default_params());
TEParams load_params_file(const std::string& path);
nlohmann::ordered_json params_to_json(const TEParams& p);

// Names of the scalar fields accepted by set_param / get_param.
std::vector<std::string> param_names();
double get_param(const TEParams& p, const std::string& name);
void set_param(TEParams& p, const std::string& name, double value);

struct TEProcessEconomics {
  double production_rate = 0.0;  // m^3/h
  double product_quality = 0.0;  // mole fraction in [0, 1]
  double product_price = 0.0;    // $/m^3
  double operating_cost = 0.0;   // $/h
};

// Hourly profit of the plant: rate * quality * price - operating cost.
double te_per_hour_utility(const TEProcessEconomics& e);

}  // namespace pbne
