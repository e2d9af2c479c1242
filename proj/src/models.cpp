#include "bellbound/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bellbound {

namespace {

void check_probabilities(const std::vector<double>& probs, double expected_sum,
                         const std::string& what) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw std::invalid_argument(what + ": negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - expected_sum) > 1e-12) {
    throw std::invalid_argument(what + ": probabilities sum to " +
                                std::to_string(sum));
  }
}

std::vector<double> cumulative(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  if (!cdf.empty()) cdf.back() = 1.0;  // absorb rounding in the last cell
  return cdf;
}

std::size_t pick(const std::vector<double>& cdf, double u) {
  return static_cast<std::size_t>(
      std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

}  // namespace

// ---------------------------------------------------------------------------
// EvenOddCityModel

EvenOddCityModel::EvenOddCityModel(std::map<std::string, int> even_base,
                                   std::string flip_station,
                                   std::string flip_setting)
    : even_base_(std::move(even_base)),
      flip_station_(std::move(flip_station)),
      flip_setting_(std::move(flip_setting)) {}

std::shared_ptr<const EvenOddCityModel> EvenOddCityModel::make(
    std::map<std::string, int> even_base, std::string flip_station,
    std::string flip_setting) {
  for (const auto& [setting, value] : even_base) {
    if (value != 1 && value != -1) {
      throw std::invalid_argument("even_base[" + setting +
                                  "] must be +1 or -1");
    }
  }
  return std::shared_ptr<const EvenOddCityModel>(new EvenOddCityModel(
      std::move(even_base), std::move(flip_station), std::move(flip_setting)));
}

int EvenOddCityModel::response(const std::string& setting,
                               const std::string& station,
                               TimeIndex time) const {
  auto it = even_base_.find(setting);
  if (it == even_base_.end()) {
    throw std::invalid_argument("even-odd-city: unknown setting " + setting);
  }
  int value = it->second;
  if (setting == flip_setting_ && station == flip_station_) value = -value;
  if (!time.even()) value = -value;
  return value;
}

void EvenOddCityModel::respond(const TrialGroup& group, TrialStream&,
                               std::vector<OutcomeValue>& out) const {
  out.clear();
  for (const auto& m : group.measurements) {
    out.push_back(OutcomeValue::of(response(m.setting, m.station, m.time)));
  }
}

// ---------------------------------------------------------------------------
// IidHiddenVariableModel

IidHiddenVariableModel::IidHiddenVariableModel(
    std::vector<std::string> lambda_values, std::vector<double> lambda_probs,
    std::map<std::string, std::map<std::string, int>> tbl)
    : lambda_values_(std::move(lambda_values)),
      lambda_probs_(std::move(lambda_probs)),
      lambda_cdf_(cumulative(lambda_probs_)),
      response_(std::move(tbl)) {}

std::shared_ptr<const IidHiddenVariableModel> IidHiddenVariableModel::make(
    std::vector<std::string> lambda_values, std::vector<double> lambda_probs,
    std::map<std::string, std::map<std::string, int>> response_table) {
  if (lambda_values.empty() || lambda_values.size() != lambda_probs.size()) {
    throw std::invalid_argument(
        "iid-hidden-variable: lambda values/probs size mismatch");
  }
  check_probabilities(lambda_probs, 1.0, "iid-hidden-variable");
  for (const auto& [setting, row] : response_table) {
    for (const auto& lambda : lambda_values) {
      auto it = row.find(lambda);
      if (it == row.end()) {
        throw std::invalid_argument("iid-hidden-variable: response table not "
                                    "total: missing (" +
                                    setting + ", " + lambda + ")");
      }
      if (it->second != 1 && it->second != -1) {
        throw std::invalid_argument(
            "iid-hidden-variable: response values must be +1 or -1");
      }
    }
  }
  return std::shared_ptr<const IidHiddenVariableModel>(
      new IidHiddenVariableModel(std::move(lambda_values),
                                 std::move(lambda_probs),
                                 std::move(response_table)));
}

std::shared_ptr<const IidHiddenVariableModel>
IidHiddenVariableModel::make_symmetric(
    const std::vector<std::string>& settings) {
  if (settings.empty() || settings.size() > 16) {
    throw std::invalid_argument("iid-hidden-variable: bad setting count");
  }
  const std::size_t n = 1ull << settings.size();
  std::vector<std::string> lambdas;
  std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  std::map<std::string, std::map<std::string, int>> table;
  for (std::size_t k = 0; k < n; ++k) {
    lambdas.push_back("l" + std::to_string(k));
  }
  for (std::size_t i = 0; i < settings.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      table[settings[i]][lambdas[k]] = (k >> i) & 1 ? -1 : 1;
    }
  }
  return make(std::move(lambdas), std::move(probs), std::move(table));
}

void IidHiddenVariableModel::respond(const TrialGroup& group, TrialStream& rng,
                                     std::vector<OutcomeValue>& out) const {
  // One lambda per trial group, shared by every station.
  const std::size_t k = pick(lambda_cdf_, rng.next_unit());
  const std::string& lambda = lambda_values_[k];
  out.clear();
  for (const auto& m : group.measurements) {
    auto row = response_.find(m.setting);
    if (row == response_.end()) {
      throw std::invalid_argument("iid-hidden-variable: unknown setting " +
                                  m.setting);
    }
    out.push_back(OutcomeValue::of(row->second.at(lambda)));
  }
}

// ---------------------------------------------------------------------------
// EquipmentTimeParamModel

EquipmentTimeParamModel::EquipmentTimeParamModel(
    std::uint64_t period, std::map<std::string, std::vector<std::string>> params,
    std::map<std::string, std::map<std::string, std::map<std::string, int>>>
        response_table)
    : period_(period),
      params_(std::move(params)),
      response_(std::move(response_table)) {}

std::shared_ptr<const EquipmentTimeParamModel> EquipmentTimeParamModel::make(
    std::uint64_t period, std::map<std::string, std::vector<std::string>> params,
    std::map<std::string, std::map<std::string, std::map<std::string, int>>>
        response_table) {
  if (period < 1) {
    throw std::invalid_argument("equipment-time-param: period must be >= 1");
  }
  for (const auto& [setting, symbols] : params) {
    if (symbols.size() != period) {
      throw std::invalid_argument("equipment-time-param: setting " + setting +
                                  " has " + std::to_string(symbols.size()) +
                                  " symbols, period is " +
                                  std::to_string(period));
    }
  }
  return std::shared_ptr<const EquipmentTimeParamModel>(
      new EquipmentTimeParamModel(period, std::move(params),
                                  std::move(response_table)));
}

void EquipmentTimeParamModel::respond(const TrialGroup& group, TrialStream&,
                                      std::vector<OutcomeValue>& out) const {
  out.clear();
  for (const auto& m : group.measurements) {
    auto params_it = params_.find(m.setting);
    if (params_it == params_.end()) {
      throw std::invalid_argument("equipment-time-param: unknown setting " +
                                  m.setting);
    }
    const std::string& symbol = params_it->second[m.time.n % period_];
    auto setting_it = response_.find(m.setting);
    if (setting_it == response_.end()) {
      throw std::invalid_argument("equipment-time-param: no responses for " +
                                  m.setting);
    }
    auto station_it = setting_it->second.find(m.station);
    if (station_it == setting_it->second.end()) {
      throw std::invalid_argument("equipment-time-param: no responses for (" +
                                  m.setting + ", " + m.station + ")");
    }
    auto value_it = station_it->second.find(symbol);
    if (value_it == station_it->second.end()) {
      throw std::invalid_argument("equipment-time-param: response table not "
                                  "total: missing symbol " + symbol);
    }
    out.push_back(OutcomeValue::of(value_it->second));
  }
}

// ---------------------------------------------------------------------------
// QuantumSingletModel

std::shared_ptr<const QuantumSingletModel> QuantumSingletModel::make() {
  return std::make_shared<const QuantumSingletModel>();
}

void QuantumSingletModel::respond(const TrialGroup& group, TrialStream& rng,
                                  std::vector<OutcomeValue>& out) const {
  if (group.measurements.size() != 2) {
    throw std::invalid_argument(
        "quantum-singlet: needs exactly two co-dated measurements, got " +
        std::to_string(group.measurements.size()));
  }
  const auto& first = group.measurements[0];
  const auto& second = group.measurements[1];
  if (first.station == second.station) {
    throw std::invalid_argument(
        "quantum-singlet: both measurements at station " + first.station);
  }
  if (!first.direction || !second.direction) {
    throw std::invalid_argument(
        "quantum-singlet: settings need direction vectors");
  }
  const double d = dot(*first.direction, *second.direction);
  // P(A, B) = (1 - A*B*d) / 4 over (+,+), (+,-), (-,+), (-,-).
  const double same = (1.0 - d) / 4.0;
  const double diff = (1.0 + d) / 4.0;
  const double u = rng.next_unit();
  int a;
  int b;
  if (u < same) {
    a = 1, b = 1;
  } else if (u < same + diff) {
    a = 1, b = -1;
  } else if (u < same + 2 * diff) {
    a = -1, b = 1;
  } else {
    a = -1, b = -1;
  }
  out.clear();
  out.push_back(OutcomeValue::of(a));
  out.push_back(OutcomeValue::of(b));
}

// ---------------------------------------------------------------------------
// JointTripleModel

JointTripleModel::JointTripleModel(std::vector<std::string> settings,
                                   std::vector<double> probs)
    : settings_(std::move(settings)),
      probs_(std::move(probs)),
      cdf_(cumulative(probs_)) {}

std::shared_ptr<const JointTripleModel> JointTripleModel::make(
    std::vector<std::string> settings, std::vector<double> probs) {
  if (settings.size() != 3) {
    throw std::invalid_argument("joint-triple: needs exactly 3 settings");
  }
  if (std::set<std::string>(settings.begin(), settings.end()).size() != 3) {
    throw std::invalid_argument("joint-triple: settings must be distinct");
  }
  if (probs.size() != 8) {
    throw std::invalid_argument("joint-triple: needs 8 probabilities");
  }
  check_probabilities(probs, 1.0, "joint-triple");
  return std::shared_ptr<const JointTripleModel>(
      new JointTripleModel(std::move(settings), std::move(probs)));
}

std::shared_ptr<const JointTripleModel> JointTripleModel::make_uniform(
    std::vector<std::string> settings) {
  return make(std::move(settings), std::vector<double>(8, 0.125));
}

void JointTripleModel::outcome_signs(std::size_t k, int signs[3]) {
  for (int i = 0; i < 3; ++i) {
    signs[i] = (k >> (2 - i)) & 1 ? -1 : 1;
  }
}

void JointTripleModel::respond(const TrialGroup& group, TrialStream& rng,
                               std::vector<OutcomeValue>& out) const {
  if (group.measurements.size() != 3) {
    throw std::invalid_argument(
        "joint-triple: needs exactly three co-dated measurements, got " +
        std::to_string(group.measurements.size()));
  }
  std::set<std::string> seen;
  for (const auto& m : group.measurements) seen.insert(m.setting);
  if (seen != std::set<std::string>(settings_.begin(), settings_.end())) {
    throw std::invalid_argument(
        "joint-triple: trial group must measure each configured setting once");
  }
  const std::size_t k = pick(cdf_, rng.next_unit());
  int signs[3];
  outcome_signs(k, signs);
  out.clear();
  for (const auto& m : group.measurements) {
    auto it = std::find(settings_.begin(), settings_.end(), m.setting);
    out.push_back(OutcomeValue::of(signs[it - settings_.begin()]));
  }
}

// ---------------------------------------------------------------------------

double singlet_correlation(const Vec3& a, const Vec3& b) {
  if (std::abs(norm(a) - 1.0) > 1e-9 || std::abs(norm(b) - 1.0) > 1e-9) {
    throw std::invalid_argument("singlet_correlation: inputs must be unit "
                                "vectors");
  }
  return -dot(a, b);
}

}  // namespace bellbound
