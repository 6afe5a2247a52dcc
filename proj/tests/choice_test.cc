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

#include "distchoice/choice.h"

#include <random>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "distchoice/matroid.h"
#include "distchoice/preferences.h"
#include "fixtures.h"
#include "gtest/gtest.h"

namespace distchoice {
namespace {

using ::distchoice::testing::AllSubsetsOracle;
using ::distchoice::testing::ChoiceOracle;
using ::distchoice::testing::ConstantIndifferent;
using ::distchoice::testing::FloorsCeilingsInstance;
using ::distchoice::testing::FrontierOracle;
using ::distchoice::testing::RandomInjectiveValues;
using ::distchoice::testing::RandomRanking;
using ::distchoice::testing::RandomTypes;

TEST(DistributionalChoiceTest, DichotomousFullPool) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Dichotomous();
  EXPECT_EQ(*DistributionalChoice(*pref, inst.pi, inst.q, inst.ground.All()),
            inst.Set({1, 4, 5}));
}

TEST(DistributionalChoiceTest, DichotomousWithoutS5DefaultsToPriority) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Dichotomous();
  EXPECT_EQ(*DistributionalChoice(*pref, inst.pi, inst.q,
                                  inst.Set({1, 2, 3, 4})),
            inst.Set({1, 2, 3}));
}

TEST(DistributionalChoiceTest, SoftBoundsWithoutS5KeepsS4) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Soft();
  EXPECT_EQ(*DistributionalChoice(*pref, inst.pi, inst.q,
                                  inst.Set({1, 2, 3, 4})),
            inst.Set({1, 2, 4}));
  EXPECT_EQ(*DistributionalChoice(*pref, inst.pi, inst.q, inst.ground.All()),
            inst.Set({1, 4, 5}));
}

TEST(DistributionalChoiceTest, MatchesOracleOnEveryMenu) {
  FloorsCeilingsInstance inst;
  for (const PreferencePtr& pref : {inst.Dichotomous(), inst.Soft()}) {
    for (StudentSet menu : AllSubsetsOracle(5)) {
      EXPECT_EQ(*DistributionalChoice(*pref, inst.pi, inst.q, menu),
                ChoiceOracle(*pref, inst.pi, inst.q, menu))
          << pref->name() << " " << inst.ground.Format(menu);
    }
  }
}

TEST(DistributionalChoiceTest, OutputIsFrontierMemberAndIdempotent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6;
    auto pref = PointwisePreference(
        testing::RandomSmallValues(n, 3, rng));
    const PriorityRanking pi = RandomRanking(n, rng);
    for (StudentSet menu : AllSubsetsOracle(n)) {
      StudentSet chosen = *DistributionalChoice(*pref, pi, 2, menu);
      std::vector<StudentSet> frontier = FrontierOracle(*pref, menu, 2);
      EXPECT_TRUE(std::find(frontier.begin(), frontier.end(), chosen) !=
                  frontier.end());
      EXPECT_EQ(*DistributionalChoice(*pref, pi, 2, chosen), chosen);
    }
  }
}

TEST(DistributionalChoiceTest, FastPathAgreesWithEnumeration) {
  std::mt19937_64 rng(5);
  const int n = 8;
  std::vector<MatroidPtr> matroids;
  matroids.push_back(UniformMatroid(n, 3));
  matroids.push_back(*PartitionMatroid({RandomTypes(n, 3, rng), {1, 2, 1}}));
  matroids.push_back(*TransversalMatroid(
      {n, {StudentSet(0x0f), StudentSet(0x3c), StudentSet(0xc1)}}));
  matroids.push_back(*VectorMatroid({{{1, 0, 0}, {0, 1, 0}, {1, 1, 0},
                                      {0, 0, 1}, {1, 0, 1}, {0, 1, 1},
                                      {1, 1, 1}, {0, 0, 0}}}));
  for (const MatroidPtr& m : matroids) {
    auto pref = MatroidRankPreference(m);
    ASSERT_NE(pref->rank_matroid(), nullptr);
    const PriorityRanking pi = RandomRanking(n, rng);
    for (int q = 1; q <= 4; ++q) {
      for (StudentSet menu : AllSubsetsOracle(n)) {
        EXPECT_EQ(*DistributionalChoice(*pref, pi, q, menu, {},
                                        ChoicePath::kMatroidFastPath),
                  *DistributionalChoice(*pref, pi, q, menu, {},
                                        ChoicePath::kEnumeration))
            << m->name() << " q=" << q << " menu=" << menu.mask();
      }
    }
  }
}

TEST(DistributionalChoiceTest, FastPathRequiresDeclaredMatroid) {
  FloorsCeilingsInstance inst;
  EXPECT_EQ(DistributionalChoice(*inst.Soft(), inst.pi, 3, inst.ground.All(),
                                 {}, ChoicePath::kMatroidFastPath)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(DistributionalChoiceTest, BudgetExceeded) {
  auto ground = *GroundSet::Create(40);
  auto pref = AdditivePreference(*ValueFunction::Create(
      std::vector<double>(40, 1.0)));
  EnumerationBudget budget;
  budget.max_subsets = 1000;
  absl::StatusOr<StudentSet> r = DistributionalChoice(
      *pref, PriorityRanking::Identity(40), 20, ground.All(), budget);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
  EXPECT_NE(r.status().message().find("budget exceeded"), std::string::npos);
}

TEST(DistributionalChoiceTest, LargeMatroidMenuUsesFastPath) {
  const int n = 60;
  std::vector<int> types(n);
  for (int i = 0; i < n; ++i) types[i] = i % 3;
  auto m = *PartitionMatroid(
      {*TypeAssignment::Create(types, 3), {5, 5, 5}});
  auto pref = MatroidRankPreference(m);
  auto ground = *GroundSet::Create(n);
  StudentSet chosen = *DistributionalChoice(
      *pref, PriorityRanking::Identity(n), 20, ground.All());
  // Five of each type by priority, then the next five highest overall.
  EXPECT_EQ(chosen.size(), 20);
  EXPECT_EQ(chosen, StudentSet::FirstN(20));
}

TEST(CheckNonWastefulTest, Examples) {
  FloorsCeilingsInstance inst;
  auto greedy = DistributionalChoiceRule(inst.Dichotomous(), inst.pi, 3);
  EXPECT_TRUE(CheckNonWasteful(*greedy, inst.ground, 3)->passed());
  auto empty = FunctionChoiceRule("empty", 3,
                                  [](StudentSet) { return StudentSet(); });
  absl::StatusOr<AxiomReport> r = CheckNonWasteful(*empty, inst.ground, 3);
  EXPECT_EQ(r->violation_count, 31);  // every non-empty menu
  EXPECT_TRUE(CheckNonWasteful(*TopByPriorityRule(inst.pi, 3), inst.ground, 3)
                  ->passed());
}

TEST(CheckNonWastefulTest, RejectsNonSubsetOutputs) {
  FloorsCeilingsInstance inst;
  auto bad = FunctionChoiceRule("bad", 3,
                                [](StudentSet) { return StudentSet(1); });
  EXPECT_EQ(CheckNonWasteful(*bad, inst.ground, 3).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(CheckPromotesTest, TopByPriorityViolatesUnderDichotomousBounds) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Dichotomous();
  absl::StatusOr<AxiomReport> r =
      CheckPromotes(*TopByPriorityRule(inst.pi, 3), *pref, inst.ground, 3);
  ASSERT_TRUE(r.ok());
  bool found = false;
  for (const AxiomViolation& v : r->violations) {
    if (v.menu == inst.ground.All()) {
      found = true;
      EXPECT_EQ(v.chosen, inst.Set({1, 2, 3}));
      EXPECT_EQ(*pref->Compare(v.witness, v.chosen),
                Comparison::kStrictlyBetter);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(CheckPromotes(*DistributionalChoiceRule(pref, inst.pi, 3), *pref,
                            inst.ground, 3)
                  ->passed());
}

TEST(CheckPromotesTest, ConstantIndifferentAlwaysPasses) {
  FloorsCeilingsInstance inst;
  auto pref = ConstantIndifferent();
  EXPECT_TRUE(CheckPromotes(*TopByPriorityRule(inst.pi.Reversed(), 3), *pref,
                            inst.ground, 3)
                  ->passed());
}

TEST(CheckNoJustifiedEnvyTest, LowestPriorityFrontierMemberViolates) {
  FloorsCeilingsInstance inst;
  auto pref = AdditivePreference(*ValueFunction::Create({1, 1, 1, 1, 1}));
  // With a constant f every NW set is in the frontier; the reversed-priority
  // rule picks the lowest-priority members.
  auto lowest = TopByPriorityRule(inst.pi.Reversed(), 3);
  absl::StatusOr<AxiomReport> r =
      CheckNoJustifiedEnvy(*lowest, *pref, inst.pi, inst.ground);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->passed());
  for (const AxiomViolation& v : r->violations) {
    EXPECT_TRUE(inst.pi.Prefers(v.other, v.student));
  }
  EXPECT_TRUE(CheckNoJustifiedEnvy(*DistributionalChoiceRule(pref, inst.pi, 3),
                                   *pref, inst.pi, inst.ground)
                  ->passed());
}

TEST(CheckNoJustifiedEnvyTest, SingletonGroundIsVacuous) {
  auto ground = *GroundSet::Create(1);
  auto pref = ConstantIndifferent();
  auto rule = TopByPriorityRule(PriorityRanking::Identity(1), 1);
  absl::StatusOr<AxiomReport> r =
      CheckNoJustifiedEnvy(*rule, *pref, PriorityRanking::Identity(1), ground);
  EXPECT_TRUE(r->passed());
}

TEST(CheckPathIndependenceTest, DichotomousWitness) {
  FloorsCeilingsInstance inst;
  auto rule = DistributionalChoiceRule(inst.Dichotomous(), inst.pi, 3);
  absl::StatusOr<PathIndependenceReport> r =
      CheckPathIndependence(*rule, inst.ground);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->passed());
  EXPECT_FALSE(r->substitutability.passed());
  EXPECT_TRUE(r->agrees());
  bool found = false;
  for (const AxiomViolation& v : r->substitutability.violations) {
    if (v.menu == inst.ground.All() && v.student == 3 && v.other == 4) {
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(CheckPathIndependenceTest, SoftBoundsPass) {
  FloorsCeilingsInstance inst;
  auto rule = DistributionalChoiceRule(inst.Soft(), inst.pi, 3);
  absl::StatusOr<PathIndependenceReport> r =
      CheckPathIndependence(*rule, inst.ground);
  EXPECT_TRUE(r->passed());
  EXPECT_TRUE(r->decomposition_passed());
}

TEST(CheckPathIndependenceTest, DirectAndDecompositionAgreeOnRandomRules) {
  std::mt19937_64 rng(17);
  const int n = 4;
  std::uniform_int_distribution<uint64_t> bits;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<StudentSet> choices(1 << n);
    for (uint64_t m = 0; m < choices.size(); ++m) {
      StudentSet pick(bits(rng) & m);
      while (pick.size() > 2) pick = pick.Without(pick.Members().back());
      choices[m] = pick;
    }
    auto rule = TableChoiceRule(
        "random", *ChoiceTable::FromChoices(n, 2, choices));
    absl::StatusOr<PathIndependenceReport> r =
        CheckPathIndependence(*rule, *GroundSet::Create(n));
    EXPECT_TRUE(r->agrees());
  }
}

TEST(CheckTrichotomyTest, RequiresCertificate) {
  FloorsCeilingsInstance inst;
  StructuralCertificate cert;
  cert.q = 3;
  cert.maximizer.violations.push_back({});
  EXPECT_EQ(CheckTrichotomy(*TopByPriorityRule(inst.pi, 3),
                            *inst.Dichotomous(), inst.pi, 3, inst.ground,
                            cert)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(CheckTrichotomyTest, Clauses) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Dichotomous();
  StructuralCertificate cert = *CertifyPreference(*pref, inst.ground, 3);
  ASSERT_TRUE(cert.SupportsUniqueness());

  absl::StatusOr<TrichotomyReport> top = CheckTrichotomy(
      *TopByPriorityRule(inst.pi, 3), *pref, inst.pi, 3, inst.ground, cert);
  ASSERT_TRUE(top.ok());
  EXPECT_TRUE(top->passed());
  EXPECT_FALSE(top->divergences.empty());
  for (const TrichotomyCase& c : top->divergences) EXPECT_TRUE(c.inferior);

  auto one_short = FunctionChoiceRule("one-short", 3, [&](StudentSet s) {
    StudentSet c = *DistributionalChoice(*pref, inst.pi, 3, s);
    return c.empty() ? c : c.Without(c.Members().front());
  });
  absl::StatusOr<TrichotomyReport> waste =
      CheckTrichotomy(*one_short, *pref, inst.pi, 3, inst.ground, cert);
  EXPECT_TRUE(waste->passed());
  for (const TrichotomyCase& c : waste->divergences) EXPECT_TRUE(c.wasteful);
}

TEST(CheckTrichotomyTest, LowestFrontierMemberIsPriorityDominated) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Soft();
  StructuralCertificate cert = *CertifyPreference(*pref, inst.ground, 3);
  auto lowest = FunctionChoiceRule("lowest", 3, [&](StudentSet s) {
    return ChoiceOracle(*pref, inst.pi.Reversed(), 3, s);
  });
  absl::StatusOr<TrichotomyReport> r =
      CheckTrichotomy(*lowest, *pref, inst.pi, 3, inst.ground, cert);
  EXPECT_TRUE(r->passed());
  EXPECT_FALSE(r->divergences.empty());
  for (const TrichotomyCase& c : r->divergences) EXPECT_TRUE(c.dominated);
}

TEST(CheckTrichotomyAllRulesTest, NoCounterexamples) {
  FloorsCeilingsInstance inst;
  auto pref = inst.Soft();
  StructuralCertificate cert = *CertifyPreference(*pref, inst.ground, 3);
  absl::StatusOr<ExhaustiveTrichotomyReport> r =
      CheckTrichotomyAllRules(*pref, inst.pi, 3, inst.ground, cert);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->passed());
  EXPECT_EQ(r->menus_checked, 32);
  EXPECT_GT(r->frontier_valued_alternatives, 0);
}

// Enumerates whole rules (one frontier member per menu) and applies the
// rule-level checkers to each, independently of the per-menu census.
TEST(CensusAxiomaticRulesTest, AgreesWithWholeRuleEnumeration) {
  const int n = 3;
  const int q = 2;
  auto ground = *GroundSet::Create(n);
  auto pref = AdditivePreference(*ValueFunction::Create({2, 1, 1}));
  const PriorityRanking pi = *PriorityRanking::Create({2, 0, 1});

  std::vector<std::vector<StudentSet>> frontiers;
  for (StudentSet menu : AllSubsetsOracle(n)) {
    frontiers.push_back(FrontierOracle(*pref, menu, q));
  }
  std::vector<size_t> pick(frontiers.size(), 0);
  int passing = 0;
  StudentSet greedy_full;
  while (true) {
    std::vector<StudentSet> choices;
    for (size_t m = 0; m < frontiers.size(); ++m) {
      choices.push_back(frontiers[m][pick[m]]);
    }
    auto rule = TableChoiceRule("t", *ChoiceTable::FromChoices(n, q, choices));
    if (CheckNonWasteful(*rule, ground, q)->passed() &&
        CheckPromotes(*rule, *pref, ground, q)->passed() &&
        CheckNoJustifiedEnvy(*rule, *pref, pi, ground)->passed()) {
      ++passing;
      greedy_full = choices.back();
    }
    size_t m = 0;
    while (m < pick.size() && pick[m] + 1 == frontiers[m].size()) {
      pick[m++] = 0;
    }
    if (m == pick.size()) break;
    ++pick[m];
  }
  EXPECT_EQ(passing, 1);
  EXPECT_EQ(greedy_full, *DistributionalChoice(*pref, pi, q, ground.All()));

  absl::StatusOr<AxiomaticRuleCensus> census =
      CensusAxiomaticRules(*pref, pi, q, ground);
  ASSERT_TRUE(census.ok());
  EXPECT_EQ(census->passing_rules, 1u);
  EXPECT_TRUE(census->unique_and_greedy());
}

TEST(CensusAxiomaticRulesTest, DichotomousFullPoolHasOnePassingOutput) {
  FloorsCeilingsInstance inst;
  absl::StatusOr<AxiomaticRuleCensus> census =
      CensusAxiomaticRules(*inst.Dichotomous(), inst.pi, 3, inst.ground);
  ASSERT_TRUE(census.ok());
  EXPECT_TRUE(census->unique_and_greedy());
  EXPECT_EQ(census->menus.back().passing,
            std::vector<StudentSet>{inst.Set({1, 4, 5})});
}

TEST(RevealPrioritiesTest, RoundTripAdditiveInjective) {
  std::mt19937_64 rng(3);
  const int n = 6;
  auto ground = *GroundSet::Create(n);
  for (int trial = 0; trial < 10; ++trial) {
    auto pref = AdditivePreference(RandomInjectiveValues(n, rng));
    const PriorityRanking pi = RandomRanking(n, rng);
    for (int q = 1; q <= 3; ++q) {
      auto rule = DistributionalChoiceRule(pref, pi, q);
      absl::StatusOr<RevealResult> r =
          RevealPriorities(*rule, *pref, ground, q);
      ASSERT_TRUE(r.ok());
      ASSERT_TRUE(std::holds_alternative<PriorityRanking>(*r));
      const PriorityRanking& revealed = std::get<PriorityRanking>(*r);
      for (StudentSet menu : AllSubsetsOracle(n)) {
        EXPECT_EQ(*DistributionalChoice(*pref, revealed, q, menu),
                  *rule->Choose(menu));
      }
    }
  }
}

TEST(RevealPrioritiesTest, ConstantIndifferentRevealsObservedSwaps) {
  const int n = 5;
  auto ground = *GroundSet::Create(n);
  auto pref = ConstantIndifferent();
  const PriorityRanking pi = *PriorityRanking::Create({3, 1, 4, 0, 2});
  auto rule = DistributionalChoiceRule(pref, pi, 2);
  // Every swap is Indifferent, so s -> t exactly when some menu admits s and
  // rejects t: t needs two students above it, one of them s.
  std::vector<StudentSet> observed(n);
  for (StudentSet menu : AllSubsetsOracle(n)) {
    std::vector<int> sorted = pi.Sorted(menu);
    for (size_t i = 0; i < sorted.size() && i < 2; ++i) {
      for (size_t j = 2; j < sorted.size(); ++j) {
        observed[sorted[i]] = observed[sorted[i]].With(sorted[j]);
      }
    }
  }
  absl::StatusOr<RevealedRelation> rel =
      BuildRevealedRelation(*rule, *pref, ground);
  ASSERT_TRUE(rel.ok());
  EXPECT_EQ(rel->successors, observed);
  // 3 and 1 are never separated; the tie goes to the smaller id.
  absl::StatusOr<RevealResult> r = RevealPriorities(*rule, *pref, ground, 2);
  ASSERT_TRUE(std::holds_alternative<PriorityRanking>(*r));
  const PriorityRanking& revealed = std::get<PriorityRanking>(*r);
  EXPECT_EQ(revealed.order(), (std::vector<int>{1, 3, 4, 0, 2}));
  for (StudentSet menu : AllSubsetsOracle(n)) {
    EXPECT_EQ(*DistributionalChoice(*pref, revealed, 2, menu),
              *rule->Choose(menu));
  }
}

TEST(RevealPrioritiesTest, AlternatingRuleYieldsTwoCycle) {
  // Constant f, q = 1: every singleton is a frontier member. On {0,1} pick 0,
  // on {0,1,2} pick 1 over 0.
  const int n = 3;
  auto ground = *GroundSet::Create(n);
  auto pref = AdditivePreference(*ValueFunction::Create({1, 1, 1}));
  auto rule = FunctionChoiceRule("alternating", 1, [](StudentSet s) {
    if (s == StudentSet(0b011)) return StudentSet(0b001);
    if (s == StudentSet(0b111)) return StudentSet(0b010);
    return s.empty() ? s : StudentSet(s.mask() & (~s.mask() + 1));
  });
  absl::StatusOr<RevealResult> r = RevealPriorities(*rule, *pref, ground, 1);
  ASSERT_TRUE(r.ok());
  ASSERT_TRUE(std::holds_alternative<CycleWitness>(*r));
  const CycleWitness& w = std::get<CycleWitness>(*r);
  EXPECT_EQ(w.students, (std::vector<int>{0, 1}));
  ASSERT_EQ(w.menus.size(), 2u);
  EXPECT_EQ(w.menus[0], StudentSet(0b011));
  EXPECT_EQ(w.menus[1], StudentSet(0b111));
}

TEST(ChoiceTableTest, FromChoicesValidates) {
  EXPECT_FALSE(ChoiceTable::FromChoices(2, 1, {StudentSet()}).ok());
  EXPECT_FALSE(ChoiceTable::FromChoices(
                   1, 1, {StudentSet(), StudentSet(0b10)})
                   .ok());
  EXPECT_TRUE(ChoiceTable::FromChoices(1, 1, {StudentSet(), StudentSet(1)})
                  .ok());
}

}  // namespace
}  // namespace distchoice
