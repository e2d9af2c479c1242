#include "bellbound/engine.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <thread>
#include <unordered_map>

namespace bellbound {

namespace {

// The distinct physical measurements of one trial group, in template order.
// Several slots may share one measurement (a station's single exam can feed
// multiple terms); measurement_of_slot maps each template to its measurement.
struct GroupLayout {
  std::vector<std::pair<std::string, std::string>> measurements;  // station, setting
  std::size_t size() const { return measurements.size(); }
};

GroupLayout layout_for(const Schedule& schedule,
                       const std::vector<std::size_t>& terms) {
  GroupLayout layout;
  for (const auto& tpl : schedule.templates) {
    if (std::find(terms.begin(), terms.end(), tpl.term) == terms.end()) {
      continue;
    }
    auto m = std::make_pair(tpl.station, tpl.setting);
    if (std::find(layout.measurements.begin(), layout.measurements.end(), m) ==
        layout.measurements.end()) {
      layout.measurements.push_back(std::move(m));
    }
  }
  return layout;
}

}  // namespace

TrialLog run(const OutcomeModel& model, const Expression& expr,
             const std::vector<Setting>& settings, const Schedule& schedule,
             const RunConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("run: trial count must be >= 1");
  }
  if (schedule.trials != config.trials) {
    throw std::invalid_argument("run: schedule has " +
                                std::to_string(schedule.trials) +
                                " trials, config wants " +
                                std::to_string(config.trials));
  }
  const ValidationResult validation = validate_schedule(schedule, expr);
  if (!validation.ok()) {
    throw std::invalid_argument("run: invalid schedule: " +
                                validation.violations.front());
  }

  std::unordered_map<std::string, std::optional<Vec3>> directions;
  for (const auto& s : settings) directions.emplace(s.id(), s.direction());

  // Group layouts are time-invariant given the term set; precompute one per
  // term (rotated) or a single joint layout (co-dated), plus observation
  // offsets so threads write disjoint ranges.
  const std::size_t term_count = expr.terms.size();
  std::vector<GroupLayout> layouts;
  if (schedule.kind == GroupingKind::AllTermsEachTrial) {
    layouts.push_back(layout_for(schedule, schedule.terms_at(0)));
  } else {
    for (std::size_t term = 0; term < term_count; ++term) {
      layouts.push_back(layout_for(schedule, {term}));
    }
  }
  auto layout_at = [&](std::uint64_t t) -> const GroupLayout& {
    if (schedule.kind == GroupingKind::AllTermsEachTrial) return layouts[0];
    return layouts[schedule.term_of_time[t]];
  };

  std::vector<std::uint64_t> offsets(schedule.trials + 1, 0);
  for (std::uint64_t t = 0; t < schedule.trials; ++t) {
    offsets[t + 1] = offsets[t] + layout_at(t).size();
  }

  TrialLog log;
  log.schedule = schedule;
  log.seed = config.seed;
  log.model_name = model.name();
  log.observations.resize(offsets.back());

  auto generate_range = [&](std::uint64_t begin, std::uint64_t end) {
    TrialGroup group;
    std::vector<OutcomeValue> values;
    for (std::uint64_t t = begin; t < end; ++t) {
      const GroupLayout& layout = layout_at(t);
      group.time = TimeIndex{t};
      group.measurements.clear();
      for (const auto& [station, setting] : layout.measurements) {
        auto dir = directions.find(setting);
        group.measurements.push_back(GroupMeasurement{
            setting, station, TimeIndex{t},
            dir == directions.end() ? std::nullopt : dir->second});
      }
      TrialStream stream(config.seed, t, TrialStream::kModelStream);
      model.respond(group, stream, values);
      if (values.size() != layout.size()) {
        throw std::invalid_argument("run: model produced " +
                                    std::to_string(values.size()) +
                                    " outcomes for a group of " +
                                    std::to_string(layout.size()));
      }
      for (std::size_t i = 0; i < layout.size(); ++i) {
        Observation& obs = log.observations[offsets[t] + i];
        obs.setting = layout.measurements[i].second;
        obs.station = layout.measurements[i].first;
        obs.time = TimeIndex{t};
        obs.value = values[i];
      }
    }
  };

  const unsigned threads = std::max(1u, config.threads);
  if (threads == 1 || schedule.trials < 2 * threads) {
    generate_range(0, schedule.trials);
  } else {
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::uint64_t chunk = (schedule.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk,
                                                        schedule.trials);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        try {
          generate_range(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
  }
  return log;
}

void write_csv(const TrialLog& log, std::ostream& out) {
  out << "trial,station,setting,time,value\n";
  for (const auto& obs : log.observations) {
    out << obs.time.n << ',' << obs.station << ',' << obs.setting << ','
        << obs.time.n << ',' << obs.value.value() << '\n';
  }
}

void write_jsonl(const TrialLog& log, std::ostream& out) {
  for (const auto& obs : log.observations) {
    out << "{\"trial\":" << obs.time.n << ",\"station\":\"" << obs.station
        << "\",\"setting\":\"" << obs.setting << "\",\"time\":" << obs.time.n
        << ",\"value\":" << obs.value.value() << "}\n";
  }
}

}  // namespace bellbound
