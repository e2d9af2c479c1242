#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellbound/expression.hpp"

namespace bellbound {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// A measurement setting ("a", "b", "c"). Quantum models additionally need a
/// unit direction vector; it is normalized once at construction.
class Setting {
 public:
  static Setting make(std::string id);
  static Setting make(std::string id, const Vec3& direction);

  const std::string& id() const { return id_; }
  const std::optional<Vec3>& direction() const { return direction_; }

 private:
  Setting(std::string id, std::optional<Vec3> direction)
      : id_(std::move(id)), direction_(direction) {}

  std::string id_;
  std::optional<Vec3> direction_;
};

struct StationId {
  std::string id;

  friend bool operator==(const StationId&, const StationId&) = default;
};

/// Abstract trial date. Parity of `n` is what "even/odd date" means.
struct TimeIndex {
  std::uint64_t n = 0;

  bool even() const { return n % 2 == 0; }
  friend bool operator==(const TimeIndex&, const TimeIndex&) = default;
};

/// A dichotomic outcome. Only +1 and -1 are constructible.
class OutcomeValue {
 public:
  static OutcomeValue of(int v) {
    if (v != 1 && v != -1) {
      throw std::invalid_argument("outcome value must be +1 or -1, got " +
                                  std::to_string(v));
    }
    return OutcomeValue(static_cast<std::int8_t>(v));
  }
  static OutcomeValue plus() { return OutcomeValue(1); }
  static OutcomeValue minus() { return OutcomeValue(-1); }

  int value() const { return v_; }

  friend bool operator==(const OutcomeValue&, const OutcomeValue&) = default;

 private:
  explicit OutcomeValue(std::int8_t v) : v_(v) {}
  std::int8_t v_;
};

/// One recorded measurement with full provenance.
struct Observation {
  std::string setting;
  std::string station;
  TimeIndex time;
  OutcomeValue value = OutcomeValue::plus();
};

/// Reference to one factor slot of the experiment's expression.
struct TermSlotRef {
  std::size_t term = 0;
  std::size_t slot = 0;

  friend bool operator==(const TermSlotRef&, const TermSlotRef&) = default;
};

struct MeasurementEvent {
  StationId station;
  std::string setting;
  TimeIndex time;
  TermSlotRef term_slot;
};

enum class GroupingKind {
  AllTermsEachTrial,  // every term is measured at every date
  OneTermPerTrial,    // each date measures exactly one term
};

enum class TermRotation { RoundRobin, UniformRandom };

/// Schedule in generator normal form: per-term slot templates plus the
/// grouping that tells which terms a given date feeds. Events are enumerated
/// on demand rather than materialized (trial counts run to 10^5 and beyond).
struct Schedule {
  std::uint64_t trials = 0;
  GroupingKind kind = GroupingKind::AllTermsEachTrial;
  // Ordered by (term, slot); mirrors the expression's slots.
  std::vector<SlotTemplate> templates;
  // kind == OneTermPerTrial: term index measured at each date, size == trials.
  std::vector<std::uint32_t> term_of_time;

  std::vector<std::size_t> terms_at(std::uint64_t t) const;
  void for_each_event(
      std::uint64_t t,
      const std::function<void(const MeasurementEvent&)>& fn) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

Schedule build_codated_schedule(const Expression& expr, std::uint64_t trials);
Schedule build_rotated_schedule(const Expression& expr, std::uint64_t trials,
                                TermRotation rotation, std::uint64_t seed);

/// Recovers the expression a schedule was built from (its slot templates).
Expression expression_of_schedule(const Schedule& schedule);

struct TrialLog {
  std::vector<Observation> observations;
  Schedule schedule;
  std::uint64_t seed = 0;
  std::string model_name;
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks Schedule invariants against the expression. Violations are data,
/// not failures: each entry names the offending event or template.
ValidationResult validate_schedule(const Schedule& schedule,
                                   const Expression& expr);

/// Same invariants checked over an explicit event list (co-dated terms, no
/// station measuring two settings at one date, every slot filled exactly
/// once per trial group).
ValidationResult validate_events(const std::vector<MeasurementEvent>& events,
                                 const Expression& expr);

/// Expression slots must reference defined settings and stations.
ValidationResult validate_expression(const Expression& expr,
                                     const std::vector<Setting>& settings,
                                     const std::vector<StationId>& stations);

/// Observations must match the schedule: one value per scheduled measurement,
/// no (station, time) pair recorded twice.
ValidationResult validate_log(const TrialLog& log);

}  // namespace bellbound
