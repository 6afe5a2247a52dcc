// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distchoice/frontier.h"

#include <random>
#include <vector>

#include "absl/status/status.h"
#include "distchoice/preferences.h"
#include "fixtures.h"
#include "gtest/gtest.h"

namespace distchoice {
namespace {

using ::distchoice::testing::AllSubsetsOracle;
using ::distchoice::testing::FloorsCeilingsInstance;
using ::distchoice::testing::FrontierOracle;
using ::distchoice::testing::RandomSmallValues;
using ::distchoice::testing::RandomTypes;
using ::distchoice::testing::SubsetsOfSizeOracle;

TEST(NonWastefulSetsTest, SizeIsMinOfCapacityAndMenu) {
  EXPECT_EQ(NonWastefulSets(StudentSet(0b11111), 3).size(), 10u);
  EXPECT_EQ(NonWastefulSets(StudentSet(0b101), 3),
            std::vector<StudentSet>{StudentSet(0b101)});
  EXPECT_EQ(NonWastefulSets(StudentSet(), 3),
            std::vector<StudentSet>{StudentSet()});
}

TEST(ComputeFrontierTest, FloorsCeilingsFullPool) {
  FloorsCeilingsInstance inst;
  absl::StatusOr<FrontierResult> f =
      ComputeFrontier(*inst.Dichotomous(), inst.ground.All(), 3);
  ASSERT_TRUE(f.ok());
  EXPECT_EQ(f->target_size, 3);
  EXPECT_EQ(f->members,
            (std::vector<StudentSet>{inst.Set({1, 4, 5}), inst.Set({2, 4, 5}),
                                     inst.Set({3, 4, 5})}));
}

TEST(ComputeFrontierTest, FloorsCeilingsWithoutS5) {
  FloorsCeilingsInstance inst;
  const StudentSet menu = inst.Set({1, 2, 3, 4});
  // Nothing meets the floor, so the whole NW family ties.
  EXPECT_EQ(ComputeFrontier(*inst.Dichotomous(), menu, 3)->members.size(), 4u);
  // The soft preference keeps only the sets with s4.
  EXPECT_EQ(ComputeFrontier(*inst.Soft(), menu, 3)->members,
            (std::vector<StudentSet>{inst.Set({1, 2, 4}), inst.Set({1, 3, 4}),
                                     inst.Set({2, 3, 4})}));
}

TEST(ComputeFrontierTest, MatchesOracleAndStrategiesAgree) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 6;
    ValueFunction f = RandomSmallValues(n, 3, rng);
    for (const PreferencePtr& pref :
         {AdditivePreference(f), PointwisePreference(f),
          SoftBoundsPreference(RandomTypes(n, 2, rng),
                               *Bounds::Create({1, 0}, {2, 2}, 2), 3)}) {
      for (StudentSet menu : AllSubsetsOracle(n)) {
        for (int q = 1; q <= 3; ++q) {
          absl::StatusOr<FrontierResult> a = ComputeFrontier(*pref, menu, q);
          absl::StatusOr<FrontierResult> b =
              ComputeFrontier(*pref, menu, q, {}, FrontierStrategy::kPairwise);
          ASSERT_TRUE(a.ok() && b.ok());
          EXPECT_EQ(a->members, b->members);
          EXPECT_EQ(a->members, FrontierOracle(*pref, menu, q));
          EXPECT_FALSE(a->members.empty());
        }
      }
    }
  }
}

TEST(ComputeFrontierTest, Errors) {
  FloorsCeilingsInstance inst;
  EXPECT_EQ(ComputeFrontier(*inst.Soft(), inst.ground.All(), 0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EnumerationBudget tiny;
  tiny.max_subsets = 5;
  EXPECT_EQ(
      ComputeFrontier(*inst.Soft(), inst.ground.All(), 3, tiny).status().code(),
      absl::StatusCode::kResourceExhausted);
}

TEST(PropertyCheckersTest, DichotomousFailsOnlyImprovement) {
  FloorsCeilingsInstance inst;
  absl::StatusOr<StructuralCertificate> cert =
      CertifyPreference(*inst.Dichotomous(), inst.ground, 3);
  ASSERT_TRUE(cert.ok());
  EXPECT_TRUE(cert->upper_bound.passed());
  EXPECT_TRUE(cert->maximizer.passed());
  EXPECT_FALSE(cert->improvement.passed());
  EXPECT_TRUE(cert->SupportsUniqueness());
  EXPECT_FALSE(cert->SupportsPathIndependence());
  // a = {s1,s4,s5} beats every set without s5 on the full pool, yet no swap
  // of s5 into b = {s1,s2,s3} improves b.
  bool found = false;
  for (const PropertyViolation& v : cert->improvement.violations) {
    if (v.first == inst.Set({1, 4, 5}) && v.second == inst.Set({1, 2, 3}) &&
        v.student == 4) {
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(PropertyCheckersTest, SoftBoundsPassesAll) {
  FloorsCeilingsInstance inst;
  absl::StatusOr<StructuralCertificate> cert =
      CertifyPreference(*inst.Soft(), inst.ground, 3);
  ASSERT_TRUE(cert.ok());
  EXPECT_TRUE(cert->SupportsPathIndependence());
  EXPECT_FALSE(cert->improvement.vacuous());
}

TEST(PropertyCheckersTest, CompletePreferenceUpperBoundIsVacuous) {
  FloorsCeilingsInstance inst;
  absl::StatusOr<PropertyReport> r =
      CheckUpperBoundProperty(*inst.Soft(), inst.ground, 3);
  EXPECT_TRUE(r->passed());
  EXPECT_TRUE(r->vacuous());
  EXPECT_EQ(r->cases_checked, 45);  // C(10, 2) unordered pairs
}

TEST(PropertyCheckersTest, AllIncomparableFailsUpperBound) {
  auto ground = *GroundSet::Create(4);
  auto pref = CustomPreference("incomparable", false, false,
                               [](StudentSet, StudentSet) {
                                 return Comparison::kIncomparable;
                               });
  absl::StatusOr<PropertyReport> r = CheckUpperBoundProperty(*pref, ground, 2);
  EXPECT_FALSE(r->passed());
  EXPECT_EQ(r->violations.size(), 15u);  // every pair of the six 2-sets
}

TEST(PropertyCheckersTest, TwoDisjointOptimaFailMaximizer) {
  auto ground = *GroundSet::Create(4);
  auto score = [](StudentSet s) {
    return s == StudentSet(0b0011) || s == StudentSet(0b1100) ? 1 : 0;
  };
  auto pref = CustomPreference(
      "two-optima", true, false, [&](StudentSet a, StudentSet b) {
        return CompareValues(score(a), score(b), true);
      });
  absl::StatusOr<PropertyReport> r = CheckMaximizerProperty(*pref, ground, 2);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->violations.size(), 1u);
  EXPECT_EQ(r->violations[0].first, StudentSet(0b0011));
  EXPECT_EQ(r->violations[0].second, StudentSet(0b1100));
}

TEST(PropertyCheckersTest, BudgetAndCapacityErrors) {
  auto ground = *GroundSet::Create(20);
  auto pref = AdditivePreference(
      *ValueFunction::Create(std::vector<double>(20, 1.0)));
  EXPECT_EQ(CheckUpperBoundProperty(*pref, ground, 3).status().code(),
            absl::StatusCode::kResourceExhausted);
  auto small = *GroundSet::Create(4);
  EXPECT_EQ(CheckUpperBoundProperty(*pref, small, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(FrontierStructureTest, CertifiedFrontiersAreIndifferentDominatingBases) {
  FloorsCeilingsInstance inst;
  for (const PreferencePtr& pref : {inst.Soft(), inst.Dichotomous()}) {
    StructuralCertificate cert = *CertifyPreference(*pref, inst.ground, 3);
    for (StudentSet menu : AllSubsetsOracle(5)) {
      absl::StatusOr<FrontierStructureReport> r =
          CheckFrontierStructure(*pref, menu, 3, cert);
      ASSERT_TRUE(r.ok());
      EXPECT_TRUE(r->passed()) << inst.ground.Format(menu);
      EXPECT_TRUE(r->bases_checked);
    }
  }
}

TEST(FrontierStructureTest, RequiresUpperBound) {
  FloorsCeilingsInstance inst;
  StructuralCertificate cert;
  cert.q = 3;
  cert.upper_bound.violations.push_back({});
  EXPECT_EQ(CheckFrontierStructure(*inst.Soft(), inst.ground.All(), 3, cert)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  StructuralCertificate wrong_q = *CertifyPreference(*inst.Soft(), inst.ground,
                                                     2);
  EXPECT_EQ(CheckFrontierStructure(*inst.Soft(), inst.ground.All(), 3, wrong_q)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(FrontierStructureTest, UncertifiedFrontierCanFailBaseAxioms) {
  auto ground = *GroundSet::Create(4);
  auto score = [](StudentSet s) {
    return s == StudentSet(0b0011) || s == StudentSet(0b1100) ? 1 : 0;
  };
  auto pref = CustomPreference(
      "two-optima", true, false, [&](StudentSet a, StudentSet b) {
        return CompareValues(score(a), score(b), true);
      });
  std::vector<StudentSet> members =
      ComputeFrontier(*pref, ground.All(), 2)->members;
  EXPECT_FALSE(CheckBaseAxioms(members).passed());
  EXPECT_EQ(SubsetsOfSizeOracle(ground.All(), 2).size(), 6u);
}

}  // namespace
}  // namespace distchoice
