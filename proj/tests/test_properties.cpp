#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace {

void expect_clean(const props::Outcome& o, std::size_t min_cases) {
  EXPECT_GE(o.cases, min_cases) << o.name;
  EXPECT_EQ(o.failures, 0u) << o.name << ": " << o.first_failure;
}

}  // namespace

TEST(Properties, LevelProduct) { expect_clean(props::level_product(), 50); }
TEST(Properties, ContainmentMonotone) { expect_clean(props::containment_monotone(), 50); }
TEST(Properties, PowerFloor) { expect_clean(props::power_floor(), 50); }
TEST(Properties, StrictlyBelowThreshold) { expect_clean(props::strictly_below_threshold(), 50); }
TEST(Properties, SumSubadditive) { expect_clean(props::sum_subadditive(), 50); }
TEST(Properties, BracketLevel) { expect_clean(props::bracket_level(), 40); }
TEST(Properties, CeilingFormula) { expect_clean(props::ceiling_formula(), 40); }
TEST(Properties, ThresholdShift) { expect_clean(props::threshold_shift(), 25); }
TEST(Properties, FedderLevels) { expect_clean(props::fedder_levels(), 30); }
TEST(Properties, FrobRoot) { expect_clean(props::frob_root_checks(), 60); }
TEST(Properties, HowaldMonotone) { expect_clean(props::howald_monotone(), 50); }
TEST(Properties, ContainsGraded) { expect_clean(props::contains_graded(), 50); }
TEST(Properties, GeneralVsPrincipal) { expect_clean(props::general_vs_principal(), 30); }
