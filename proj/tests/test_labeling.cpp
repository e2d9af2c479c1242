#include "doctest.h"

#include <set>

#include "bellbound/labeling.hpp"
#include "oracles.hpp"

using namespace bellbound;

TEST_CASE("setting-only merges stations and dates") {
  CHECK(label("a", "Lille", TimeIndex{5}, 0, LabelingScheme::SettingOnly) ==
        label("a", "Lyon", TimeIndex{8}, 3, LabelingScheme::SettingOnly));
  CHECK(label("a", "Lille", TimeIndex{5}, 0, LabelingScheme::SettingOnly) ==
        "a");
}

TEST_CASE("setting-station separates the cities") {
  const auto lille =
      label("b", "Lille", TimeIndex{5}, 0, LabelingScheme::SettingStation);
  const auto lyon =
      label("b", "Lyon", TimeIndex{5}, 1, LabelingScheme::SettingStation);
  CHECK(lille != lyon);
  CHECK(lille == "b/Lille");
}

TEST_CASE("parity and time keys") {
  CHECK(label("a", "Lille", TimeIndex{4}, 0,
              LabelingScheme::SettingStationParity) == "a/Lille/even");
  CHECK(label("a", "Lille", TimeIndex{7}, 0,
              LabelingScheme::SettingStationParity) == "a/Lille/odd");
  CHECK(label("a", "Lille", TimeIndex{7}, 0,
              LabelingScheme::SettingStationTime) == "a/Lille/t7");
}

TEST_CASE("fully distinct gives every slot occurrence its own key") {
  const Expression expr = lg_three_station();
  const auto labels = slot_labels(expr, LabelingScheme::FullyDistinct);
  std::set<std::string> keys;
  for (const auto& term : labels) keys.insert(term.begin(), term.end());
  CHECK(keys.size() == 6);
}

TEST_CASE("distinct variable counts on the LG expression") {
  const Expression expr = lg_three_station();
  CHECK(distinct_variable_count(expr, LabelingScheme::SettingOnly) == 3);
  CHECK(distinct_variable_count(expr, LabelingScheme::FullyDistinct) == 6);

  Expression single;
  single.terms = {Term{{{"a", "Lille"}, {"b", "Lyon"}}}};
  for (LabelingScheme scheme : kAllSchemes) {
    CHECK(distinct_variable_count(single, scheme) == 2);
  }
}

TEST_CASE("empty descriptor fields are rejected") {
  CHECK_THROWS_AS(label("", "Lille", TimeIndex{0}, 0,
                        LabelingScheme::SettingOnly),
                  std::invalid_argument);
  CHECK_THROWS_AS(label("a", "", TimeIndex{0}, 0,
                        LabelingScheme::SettingStation),
                  std::invalid_argument);
}

// Refinement: a finer scheme never maps two descriptors together that a
// coarser scheme separates; checked pairwise on random expressions.
TEST_CASE("refinement order over random expressions") {
  TrialStream rng(20240517, 0);
  for (int round = 0; round < 200; ++round) {
    const auto expr = bellbound::testing::random_stationed_expression(
        rng, 2 + rng.next_index(4), 1 + rng.next_index(5),
        1 + rng.next_index(3));
    for (std::size_t fine = 1; fine < std::size(kAllSchemes); ++fine) {
      const auto coarse_labels = slot_labels(expr, kAllSchemes[fine - 1]);
      const auto fine_labels = slot_labels(expr, kAllSchemes[fine]);
      // Flatten both in slot order.
      std::vector<std::string> coarse_flat;
      std::vector<std::string> fine_flat;
      for (const auto& t : coarse_labels) {
        coarse_flat.insert(coarse_flat.end(), t.begin(), t.end());
      }
      for (const auto& t : fine_labels) {
        fine_flat.insert(fine_flat.end(), t.begin(), t.end());
      }
      REQUIRE(coarse_flat.size() == fine_flat.size());
      for (std::size_t i = 0; i < coarse_flat.size(); ++i) {
        for (std::size_t j = i + 1; j < coarse_flat.size(); ++j) {
          if (fine_flat[i] == fine_flat[j]) {
            CHECK(coarse_flat[i] == coarse_flat[j]);
          }
        }
      }
    }
  }
}

TEST_CASE("distinct count is monotone along the refinement order") {
  TrialStream rng(571113, 1);
  for (int round = 0; round < 200; ++round) {
    const auto expr = bellbound::testing::random_stationed_expression(
        rng, 2 + rng.next_index(4), 1 + rng.next_index(6),
        1 + rng.next_index(3));
    std::size_t previous = 0;
    for (LabelingScheme scheme : kAllSchemes) {
      const std::size_t count = distinct_variable_count(expr, scheme);
      CHECK(count >= previous);
      previous = count;
    }
  }
}

TEST_CASE("scheme names round-trip") {
  for (LabelingScheme scheme : kAllSchemes) {
    CHECK(scheme_from_string(to_string(scheme)) == scheme);
  }
  CHECK_THROWS_AS(scheme_from_string("bogus"), std::invalid_argument);
}
