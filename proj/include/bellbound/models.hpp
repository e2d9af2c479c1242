#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bellbound/core.hpp"
#include "bellbound/rng.hpp"

namespace bellbound {

/// One physical measurement requested from a model: which station measures
/// which setting at which date. `direction` is present when the experiment
/// definition gave the setting a direction vector.
struct GroupMeasurement {
  std::string setting;
  std::string station;
  TimeIndex time;
  std::optional<Vec3> direction;
};

/// All measurements of one trial group (one date).
struct TrialGroup {
  TimeIndex time;
  std::vector<GroupMeasurement> measurements;
};

/// Outcome-generating model. Implementations are immutable after
/// construction; all per-trial randomness comes from the injected stream.
class OutcomeModel {
 public:
  virtual ~OutcomeModel() = default;

  virtual std::string name() const = 0;

  /// Fills `out[i]` with the outcome of `group.measurements[i]`.
  /// Throws std::invalid_argument on arity mismatch or missing directions.
  virtual void respond(const TrialGroup& group, TrialStream& rng,
                       std::vector<OutcomeValue>& out) const = 0;
};

/// Deterministic city/parity model: outcomes are a pure function of
/// (setting, station, parity of date). `even_base` gives the value of each
/// setting on even dates; `flip_setting` is inverted at `flip_station`; all
/// signs reverse on odd dates.
class EvenOddCityModel : public OutcomeModel {
 public:
  static std::shared_ptr<const EvenOddCityModel> make(
      std::map<std::string, int> even_base = {{"a", 1}, {"b", 1}, {"c", -1}},
      std::string flip_station = "Lyon", std::string flip_setting = "b");

  std::string name() const override { return "even-odd-city"; }
  void respond(const TrialGroup& group, TrialStream& rng,
               std::vector<OutcomeValue>& out) const override;

  int response(const std::string& setting, const std::string& station,
               TimeIndex time) const;

 private:
  EvenOddCityModel(std::map<std::string, int> even_base,
                   std::string flip_station, std::string flip_setting);

  std::map<std::string, int> even_base_;
  std::string flip_station_;
  std::string flip_setting_;
};

/// Source-borne hidden variable: one lambda is drawn per trial group, shared
/// by every station of that group; outcomes come from a total response table
/// over (setting, lambda).
class IidHiddenVariableModel : public OutcomeModel {
 public:
  static std::shared_ptr<const IidHiddenVariableModel> make(
      std::vector<std::string> lambda_values, std::vector<double> lambda_probs,
      std::map<std::string, std::map<std::string, int>> response_table);

  /// Uniform lambda over the 2^|settings| sign patterns: every setting's
  /// outcome is an independent fair +/-1 per trial.
  static std::shared_ptr<const IidHiddenVariableModel> make_symmetric(
      const std::vector<std::string>& settings);

  std::string name() const override { return "iid-hidden-variable"; }
  void respond(const TrialGroup& group, TrialStream& rng,
               std::vector<OutcomeValue>& out) const override;

 private:
  IidHiddenVariableModel(std::vector<std::string> lambda_values,
                         std::vector<double> lambda_probs,
                         std::map<std::string, std::map<std::string, int>> tbl);

  std::vector<std::string> lambda_values_;
  std::vector<double> lambda_probs_;  // nonnegative, sums to 1 within 1e-12
  std::vector<double> lambda_cdf_;
  std::map<std::string, std::map<std::string, int>> response_;
};

/// Equipment parameters lambda_s(t): a periodic table keyed by time mod P
/// selects a device parameter symbol per setting; outcomes are a
/// deterministic function of (setting, station, symbol).
class EquipmentTimeParamModel : public OutcomeModel {
 public:
  // params: setting -> P symbols, indexed by t mod P.
  // response: setting -> station -> symbol -> +/-1.
  static std::shared_ptr<const EquipmentTimeParamModel> make(
      std::uint64_t period,
      std::map<std::string, std::vector<std::string>> params,
      std::map<std::string, std::map<std::string, std::map<std::string, int>>>
          response_table);

  std::string name() const override { return "equipment-time-param"; }
  void respond(const TrialGroup& group, TrialStream& rng,
               std::vector<OutcomeValue>& out) const override;

 private:
  EquipmentTimeParamModel(
      std::uint64_t period,
      std::map<std::string, std::vector<std::string>> params,
      std::map<std::string, std::map<std::string, std::map<std::string, int>>>
          response_table);

  std::uint64_t period_;
  std::map<std::string, std::vector<std::string>> params_;
  std::map<std::string, std::map<std::string, std::map<std::string, int>>>
      response_;
};

/// Singlet pair sampler. Draws (A, B) for one station pair from the joint
/// law P(A, B | a, b) = (1 - A*B*(a.b)) / 4; no state vector is simulated.
class QuantumSingletModel : public OutcomeModel {
 public:
  static std::shared_ptr<const QuantumSingletModel> make();

  std::string name() const override { return "quantum-singlet"; }
  void respond(const TrialGroup& group, TrialStream& rng,
               std::vector<OutcomeValue>& out) const override;
};

/// Per-trial joint distribution over the 8 outcomes of three settings.
/// Outcome index k maps to signs via bit (2 - i) of k for setting i
/// (bit set means -1).
class JointTripleModel : public OutcomeModel {
 public:
  static std::shared_ptr<const JointTripleModel> make(
      std::vector<std::string> settings, std::vector<double> probs);

  static std::shared_ptr<const JointTripleModel> make_uniform(
      std::vector<std::string> settings);

  std::string name() const override { return "joint-triple"; }
  void respond(const TrialGroup& group, TrialStream& rng,
               std::vector<OutcomeValue>& out) const override;

  static void outcome_signs(std::size_t k, int signs[3]);

 private:
  JointTripleModel(std::vector<std::string> settings,
                   std::vector<double> probs);

  std::vector<std::string> settings_;  // ordered triple
  std::vector<double> probs_;          // 8 entries, nonneg, sum 1 within 1e-12
  std::vector<double> cdf_;
};

/// Closed-form singlet correlation E(a, b) = -(a.b) for unit vectors.
/// Throws std::invalid_argument when an input is not unit length.
double singlet_correlation(const Vec3& a, const Vec3& b);

}  // namespace bellbound
