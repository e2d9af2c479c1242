#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellbound/core.hpp"
#include "bellbound/expression.hpp"

namespace bellbound {

/// The rule that collapses observation descriptors into logical variable
/// identities. Ordered coarsest to finest; a finer scheme never merges two
/// descriptors that a coarser one separates.
enum class LabelingScheme {
  SettingOnly,
  SettingStation,
  SettingStationParity,
  SettingStationTime,
  FullyDistinct,
};

constexpr LabelingScheme kAllSchemes[] = {
    LabelingScheme::SettingOnly,          LabelingScheme::SettingStation,
    LabelingScheme::SettingStationParity, LabelingScheme::SettingStationTime,
    LabelingScheme::FullyDistinct,
};

/// Position in the refinement order (0 = coarsest).
int refinement_rank(LabelingScheme scheme);

std::string to_string(LabelingScheme scheme);
LabelingScheme scheme_from_string(const std::string& name);

/// Canonical logical-variable key for one measurement descriptor. Fields are
/// joined by "/" in fixed order; keys are equal exactly when the scheme
/// identifies the descriptors.
std::string label(const std::string& setting, const std::string& station,
                  TimeIndex time, std::uint64_t slot_serial,
                  LabelingScheme scheme);

/// Per-slot keys for an expression, outer index = term, inner = slot.
///
/// Expressions carry no dates, so time-sensitive schemes are labeled under
/// the convention that term i is measured at its own date i (pair exams at
/// distinct dates d1, d2, d3). This is the loosest co-dating the schedule
/// grammar allows; the resulting bound is valid for every schedule.
std::vector<std::vector<std::string>> slot_labels(const Expression& expr,
                                                  LabelingScheme scheme);

std::size_t distinct_variable_count(const Expression& expr,
                                    LabelingScheme scheme);

}  // namespace bellbound
