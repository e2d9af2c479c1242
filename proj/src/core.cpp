#include "bellbound/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "bellbound/rng.hpp"

namespace bellbound {

Setting Setting::make(std::string id) {
  if (id.empty()) {
    throw std::invalid_argument("setting id must be nonempty");
  }
  return Setting(std::move(id), std::nullopt);
}

Setting Setting::make(std::string id, const Vec3& direction) {
  if (id.empty()) {
    throw std::invalid_argument("setting id must be nonempty");
  }
  const double n = norm(direction);
  if (!(n > 1e-12)) {
    throw std::invalid_argument("setting '" + id +
                                "': direction vector is degenerate");
  }
  Vec3 unit{direction.x / n, direction.y / n, direction.z / n};
  return Setting(std::move(id), unit);
}

std::vector<std::size_t> Schedule::terms_at(std::uint64_t t) const {
  if (kind == GroupingKind::AllTermsEachTrial) {
    std::size_t term_count = 0;
    for (const auto& tpl : templates) {
      term_count = std::max(term_count, tpl.term + 1);
    }
    std::vector<std::size_t> all(term_count);
    for (std::size_t i = 0; i < term_count; ++i) all[i] = i;
    return all;
  }
  if (t < term_of_time.size()) {
    return {term_of_time[t]};
  }
  return {};
}

void Schedule::for_each_event(
    std::uint64_t t,
    const std::function<void(const MeasurementEvent&)>& fn) const {
  const auto terms = terms_at(t);
  for (const auto& tpl : templates) {
    if (std::find(terms.begin(), terms.end(), tpl.term) == terms.end()) {
      continue;
    }
    MeasurementEvent ev;
    ev.station = StationId{tpl.station};
    ev.setting = tpl.setting;
    ev.time = TimeIndex{t};
    ev.term_slot = TermSlotRef{tpl.term, tpl.slot};
    fn(ev);
  }
}

namespace {

std::vector<SlotTemplate> templates_of(const Expression& expr) {
  std::vector<SlotTemplate> templates;
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    const auto& slots = expr.terms[t].slots;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      templates.push_back(SlotTemplate{t, s, slots[s].setting,
                                       slots[s].station});
    }
  }
  return templates;
}

}  // namespace

Schedule build_codated_schedule(const Expression& expr, std::uint64_t trials) {
  Schedule schedule;
  schedule.trials = trials;
  schedule.kind = GroupingKind::AllTermsEachTrial;
  schedule.templates = templates_of(expr);
  return schedule;
}

Expression expression_of_schedule(const Schedule& schedule) {
  Expression expr;
  for (const auto& tpl : schedule.templates) {
    if (tpl.term >= expr.terms.size()) expr.terms.resize(tpl.term + 1);
    auto& slots = expr.terms[tpl.term].slots;
    if (tpl.slot >= slots.size()) slots.resize(tpl.slot + 1);
    slots[tpl.slot] = TermSlot{tpl.setting, tpl.station};
  }
  return expr;
}

Schedule build_rotated_schedule(const Expression& expr, std::uint64_t trials,
                                TermRotation rotation, std::uint64_t seed) {
  Schedule schedule;
  schedule.trials = trials;
  schedule.kind = GroupingKind::OneTermPerTrial;
  schedule.templates = templates_of(expr);
  schedule.term_of_time.resize(trials);
  const auto term_count = static_cast<std::uint64_t>(expr.terms.size());
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (rotation == TermRotation::RoundRobin) {
      schedule.term_of_time[t] = static_cast<std::uint32_t>(t % term_count);
    } else {
      TrialStream stream(seed, t, TrialStream::kRotationStream);
      schedule.term_of_time[t] =
          static_cast<std::uint32_t>(stream.next_index(term_count));
    }
  }
  return schedule;
}

namespace {

// Within one trial group a station may perform only one measurement, so all
// its slots must carry the same setting.
void check_station_conflicts(
    const std::vector<std::pair<const SlotTemplate*, std::uint64_t>>& slots,
    ValidationResult& result) {
  std::map<std::pair<std::string, std::uint64_t>, std::string> seen;
  for (const auto& [tpl, time] : slots) {
    auto key = std::make_pair(tpl->station, time);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, tpl->setting);
    } else if (it->second != tpl->setting) {
      result.violations.push_back(
          "station " + tpl->station + " measures settings " + it->second +
          " and " + tpl->setting + " at time " + std::to_string(time));
    }
  }
}

}  // namespace

ValidationResult validate_schedule(const Schedule& schedule,
                                   const Expression& expr) {
  ValidationResult result;
  if (schedule.templates != templates_of(expr)) {
    result.violations.push_back(
        "schedule slot templates do not match the expression");
    return result;
  }
  if (expr.terms.empty()) {
    result.violations.push_back("expression has no terms");
    return result;
  }
  if (schedule.kind == GroupingKind::OneTermPerTrial) {
    if (schedule.term_of_time.size() != schedule.trials) {
      result.violations.push_back("term_of_time size " +
                                  std::to_string(schedule.term_of_time.size()) +
                                  " != trials " +
                                  std::to_string(schedule.trials));
    }
    for (std::size_t t = 0; t < schedule.term_of_time.size(); ++t) {
      if (schedule.term_of_time[t] >= expr.terms.size()) {
        result.violations.push_back("time " + std::to_string(t) +
                                    " references undefined term " +
                                    std::to_string(schedule.term_of_time[t]));
        break;
      }
    }
    // Each date measures one term: conflicts only arise within a term.
    for (std::size_t term = 0; term < expr.terms.size(); ++term) {
      std::vector<std::pair<const SlotTemplate*, std::uint64_t>> group;
      for (const auto& tpl : schedule.templates) {
        if (tpl.term == term) group.emplace_back(&tpl, 0);
      }
      check_station_conflicts(group, result);
    }
  } else {
    // Every term is co-dated at every date: one joint group to check.
    std::vector<std::pair<const SlotTemplate*, std::uint64_t>> group;
    for (const auto& tpl : schedule.templates) group.emplace_back(&tpl, 0);
    check_station_conflicts(group, result);
  }
  return result;
}

ValidationResult validate_events(const std::vector<MeasurementEvent>& events,
                                 const Expression& expr) {
  ValidationResult result;
  // Slot references must exist.
  for (const auto& ev : events) {
    if (ev.term_slot.term >= expr.terms.size() ||
        ev.term_slot.slot >= expr.terms[ev.term_slot.term].slots.size()) {
      result.violations.push_back(
          "event at time " + std::to_string(ev.time.n) +
          " references undefined slot (" + std::to_string(ev.term_slot.term) +
          ", " + std::to_string(ev.term_slot.slot) + ")");
      return result;
    }
  }
  // One setting per (station, time).
  std::map<std::pair<std::string, std::uint64_t>, std::string> station_at;
  for (const auto& ev : events) {
    auto key = std::make_pair(ev.station.id, ev.time.n);
    auto it = station_at.find(key);
    if (it == station_at.end()) {
      station_at.emplace(key, ev.setting);
    } else if (it->second != ev.setting) {
      result.violations.push_back("station " + ev.station.id +
                                  " repeated at time " +
                                  std::to_string(ev.time.n) +
                                  " with a different setting");
    }
  }
  // Co-dated pairing: all slots of a term instance share one time index, and
  // no (term, slot, time) is filled twice.
  std::map<std::pair<std::size_t, std::uint64_t>, std::set<std::size_t>>
      term_slots_at;
  std::set<std::tuple<std::size_t, std::size_t, std::uint64_t>> filled;
  for (const auto& ev : events) {
    auto fill_key =
        std::make_tuple(ev.term_slot.term, ev.term_slot.slot, ev.time.n);
    if (!filled.insert(fill_key).second) {
      result.violations.push_back(
          "slot (" + std::to_string(ev.term_slot.term) + ", " +
          std::to_string(ev.term_slot.slot) + ") filled twice at time " +
          std::to_string(ev.time.n));
    }
    term_slots_at[{ev.term_slot.term, ev.time.n}].insert(ev.term_slot.slot);
  }
  for (const auto& [key, slots] : term_slots_at) {
    const auto& [term, time] = key;
    if (slots.size() != expr.terms[term].slots.size()) {
      result.violations.push_back("term " + std::to_string(term) +
                                  " not co-dated at time " +
                                  std::to_string(time) + ": got " +
                                  std::to_string(slots.size()) + " of " +
                                  std::to_string(expr.terms[term].slots.size()) +
                                  " slots");
    }
  }
  return result;
}

ValidationResult validate_expression(const Expression& expr,
                                     const std::vector<Setting>& settings,
                                     const std::vector<StationId>& stations) {
  ValidationResult result;
  std::unordered_set<std::string> setting_ids;
  for (const auto& s : settings) {
    if (!setting_ids.insert(s.id()).second) {
      result.violations.push_back("duplicate setting id " + s.id());
    }
  }
  std::unordered_set<std::string> station_ids;
  for (const auto& s : stations) {
    if (s.id.empty()) {
      result.violations.push_back("empty station id");
    } else if (!station_ids.insert(s.id).second) {
      result.violations.push_back("duplicate station id " + s.id);
    }
  }
  if (expr.terms.empty()) {
    result.violations.push_back("expression has no terms");
  }
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    if (expr.terms[t].slots.empty()) {
      result.violations.push_back("term " + std::to_string(t) +
                                  " has no slots");
    }
    for (const auto& slot : expr.terms[t].slots) {
      if (!setting_ids.count(slot.setting)) {
        result.violations.push_back("term " + std::to_string(t) +
                                    " references unknown setting " +
                                    slot.setting);
      }
      if (!station_ids.count(slot.station)) {
        result.violations.push_back("term " + std::to_string(t) +
                                    " references unknown station " +
                                    slot.station);
      }
    }
  }
  return result;
}

ValidationResult validate_log(const TrialLog& log) {
  ValidationResult result;
  std::map<std::pair<std::string, std::uint64_t>, std::string> station_at;
  for (const auto& obs : log.observations) {
    auto key = std::make_pair(obs.station, obs.time.n);
    if (!station_at.emplace(key, obs.setting).second) {
      result.violations.push_back("station " + obs.station +
                                  " observed twice at time " +
                                  std::to_string(obs.time.n));
    }
    if (obs.time.n >= log.schedule.trials) {
      result.violations.push_back("observation at time " +
                                  std::to_string(obs.time.n) +
                                  " outside schedule with " +
                                  std::to_string(log.schedule.trials) +
                                  " trials");
    }
  }
  // Every scheduled measurement must be present with a matching setting.
  for (std::uint64_t t = 0; t < log.schedule.trials; ++t) {
    log.schedule.for_each_event(t, [&](const MeasurementEvent& ev) {
      auto it = station_at.find({ev.station.id, t});
      if (it == station_at.end()) {
        result.violations.push_back("missing observation for station " +
                                    ev.station.id + " at time " +
                                    std::to_string(t));
      } else if (it->second != ev.setting) {
        result.violations.push_back("observation for station " +
                                    ev.station.id + " at time " +
                                    std::to_string(t) +
                                    " has setting " + it->second +
                                    ", schedule expects " + ev.setting);
      }
    });
    if (result.violations.size() > 16) break;  // enough to diagnose
  }
  return result;
}

}  // namespace bellbound
