#include "bellbound/labeling.hpp"

#include <stdexcept>
#include <unordered_set>

namespace bellbound {

int refinement_rank(LabelingScheme scheme) {
  switch (scheme) {
    case LabelingScheme::SettingOnly: return 0;
    case LabelingScheme::SettingStation: return 1;
    case LabelingScheme::SettingStationParity: return 2;
    case LabelingScheme::SettingStationTime: return 3;
    case LabelingScheme::FullyDistinct: return 4;
  }
  throw std::invalid_argument("unknown labeling scheme");
}

std::string to_string(LabelingScheme scheme) {
  switch (scheme) {
    case LabelingScheme::SettingOnly: return "setting-only";
    case LabelingScheme::SettingStation: return "setting-station";
    case LabelingScheme::SettingStationParity: return "setting-station-parity";
    case LabelingScheme::SettingStationTime: return "setting-station-time";
    case LabelingScheme::FullyDistinct: return "fully-distinct";
  }
  throw std::invalid_argument("unknown labeling scheme");
}

LabelingScheme scheme_from_string(const std::string& name) {
  for (LabelingScheme scheme : kAllSchemes) {
    if (to_string(scheme) == name) return scheme;
  }
  throw std::invalid_argument("unknown labeling scheme '" + name + "'");
}

std::string label(const std::string& setting, const std::string& station,
                  TimeIndex time, std::uint64_t slot_serial,
                  LabelingScheme scheme) {
  if (setting.empty()) throw std::invalid_argument("empty setting id");
  if (station.empty()) throw std::invalid_argument("empty station id");
  switch (scheme) {
    case LabelingScheme::SettingOnly:
      return setting;
    case LabelingScheme::SettingStation:
      return setting + "/" + station;
    case LabelingScheme::SettingStationParity:
      return setting + "/" + station + (time.even() ? "/even" : "/odd");
    case LabelingScheme::SettingStationTime:
      return setting + "/" + station + "/t" + std::to_string(time.n);
    case LabelingScheme::FullyDistinct:
      return setting + "/" + station + "/t" + std::to_string(time.n) + "/s" +
             std::to_string(slot_serial);
  }
  throw std::invalid_argument("unknown labeling scheme");
}

std::vector<std::vector<std::string>> slot_labels(const Expression& expr,
                                                  LabelingScheme scheme) {
  std::vector<std::vector<std::string>> labels;
  labels.reserve(expr.terms.size());
  std::uint64_t serial = 0;
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    std::vector<std::string> term_labels;
    term_labels.reserve(expr.terms[t].slots.size());
    for (const auto& slot : expr.terms[t].slots) {
      // Term index doubles as the date: distinct terms at distinct dates.
      term_labels.push_back(
          label(slot.setting, slot.station, TimeIndex{t}, serial++, scheme));
    }
    labels.push_back(std::move(term_labels));
  }
  return labels;
}

std::size_t distinct_variable_count(const Expression& expr,
                                    LabelingScheme scheme) {
  std::unordered_set<std::string> keys;
  for (const auto& term_labels : slot_labels(expr, scheme)) {
    keys.insert(term_labels.begin(), term_labels.end());
  }
  return keys.size();
}

}  // namespace bellbound
