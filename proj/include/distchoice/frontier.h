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

// Non-wasteful sets, frontiers, and exhaustive checkers for the three
// structural properties of a distributional preference (upper-bound,
// maximizer, improvement).
//
// The property checkers quantify over every pair of size-q subsets of the
// ground set. They are certification tools for n <= ~8, not production paths.

#ifndef DISTCHOICE_FRONTIER_H_
#define DISTCHOICE_FRONTIER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "distchoice/core.h"
#include "distchoice/matroid.h"

namespace distchoice {

// Hard caps on exponential enumeration. Exceeding a cap is a
// ResourceExhausted error, never a silent truncation.
struct EnumerationBudget {
  // Largest number of candidate sets a single frontier may enumerate.
  uint64_t max_subsets = uint64_t{1} << 20;
  // Largest ground set the exhaustive checkers will quantify over.
  int max_checker_ground = 16;
};

// Every subset of s of size min{q, |s|}, in increasing mask order.
std::vector<StudentSet> NonWastefulSets(StudentSet s, int q);

struct FrontierResult {
  enum class Method { kExhaustive, kCompleteFastPath };

  StudentSet input;
  int target_size = 0;
  // Increasing mask order.
  std::vector<StudentSet> members;
  Method method = Method::kExhaustive;
};

enum class FrontierStrategy {
  // Max-class scan for complete preferences, pairwise filter otherwise.
  kAuto,
  kPairwise,
};

// The undominated members of NonWastefulSets(s, q). InvalidArgument when
// q < 1; ResourceExhausted when C(|s|, min{q,|s|}) exceeds the budget.
absl::StatusOr<FrontierResult> ComputeFrontier(
    const DistributionalPreference& pref, StudentSet s, int q,
    const EnumerationBudget& budget = {},
    FrontierStrategy strategy = FrontierStrategy::kAuto);

struct PropertyViolation {
  StudentSet first;
  StudentSet second;
  int student = -1;  // the s of the improvement property, when relevant
};

struct PropertyReport {
  std::string property;
  // Pairs (or pair/student triples) enumerated.
  int64_t cases_checked = 0;
  // Cases whose hypotheses held; zero means the pass was vacuous.
  int64_t hypotheses_met = 0;
  std::vector<PropertyViolation> violations;

  bool passed() const { return violations.empty(); }
  bool vacuous() const { return hypotheses_met == 0; }
};

absl::StatusOr<PropertyReport> CheckUpperBoundProperty(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget = {});
absl::StatusOr<PropertyReport> CheckMaximizerProperty(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget = {});
absl::StatusOr<PropertyReport> CheckImprovementProperty(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget = {});

// Outcome of running all three property checkers on one (pref, ground, q).
// Uniqueness and path-independence checks downstream are gated on these.
struct StructuralCertificate {
  int q = 0;
  PropertyReport upper_bound;
  PropertyReport maximizer;
  PropertyReport improvement;

  // Upper-bound and maximizer: frontiers are matroid bases and Ch^π is the
  // unique rule with the three choice axioms.
  bool SupportsUniqueness() const {
    return upper_bound.passed() && maximizer.passed();
  }
  // All three: Ch^π is path independent.
  bool SupportsPathIndependence() const {
    return SupportsUniqueness() && improvement.passed();
  }
};

absl::StatusOr<StructuralCertificate> CertifyPreference(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget = {});

struct FrontierStructureReport {
  // Frontier members that are not pairwise Indifferent.
  std::vector<PropertyViolation> not_indifferent;
  // (member, non-member) pairs where the member is not StrictlyBetter.
  std::vector<PropertyViolation> not_dominating;
  // Only populated when the certificate supports uniqueness.
  BaseAxiomReport bases;
  bool bases_checked = false;

  bool passed() const {
    return not_indifferent.empty() && not_dominating.empty() &&
           bases.passed();
  }
};

// Derived frontier structure on menu s: pairwise indifference and strict
// dominance over the rest of NW(s) (needs the upper-bound property), and
// base axioms (needs upper-bound and maximizer). FailedPrecondition when the
// certificate has not passed the upper-bound property.
absl::StatusOr<FrontierStructureReport> CheckFrontierStructure(
    const DistributionalPreference& pref, StudentSet s, int q,
    const StructuralCertificate& certificate,
    const EnumerationBudget& budget = {});

}  // namespace distchoice

#endif  // DISTCHOICE_FRONTIER_H_
