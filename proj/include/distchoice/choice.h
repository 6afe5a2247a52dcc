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

// The greedy distributional choice rule Ch^π and checkers for the axioms it
// is characterized by: non-wastefulness, promoting the distributional
// preference, no justified envy, path independence, the trichotomy against
// alternative rules, and revealed priorities.

#ifndef DISTCHOICE_CHOICE_H_
#define DISTCHOICE_CHOICE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "distchoice/core.h"
#include "distchoice/frontier.h"

namespace distchoice {

// Ch : 2^S -> 2^S with Ch(S) ⊆ S and |Ch(S)| <= capacity().
class ChoiceRule {
 public:
  virtual ~ChoiceRule() = default;
  virtual int capacity() const = 0;
  virtual absl::StatusOr<StudentSet> Choose(StudentSet menu) const = 0;
  virtual std::string name() const = 0;
};

using ChoiceRulePtr = std::shared_ptr<const ChoiceRule>;

enum class ChoicePath {
  // Matroid fast path when the preference declares a rank matroid,
  // frontier enumeration otherwise.
  kAuto,
  kEnumeration,
  // FailedPrecondition when the preference declares no rank matroid.
  kMatroidFastPath,
};

// Scans the menu in priority order and keeps each student whose addition to
// the kept set still extends to some frontier member.
absl::StatusOr<StudentSet> DistributionalChoice(
    const DistributionalPreference& pref, const PriorityRanking& pi, int q,
    StudentSet menu, const EnumerationBudget& budget = {},
    ChoicePath path = ChoicePath::kAuto);

ChoiceRulePtr DistributionalChoiceRule(PreferencePtr pref, PriorityRanking pi,
                                       int q,
                                       EnumerationBudget budget = {},
                                       ChoicePath path = ChoicePath::kAuto);

ChoiceRulePtr FunctionChoiceRule(std::string name, int q,
                                 std::function<StudentSet(StudentSet)> fn);

// The top min{q, |S|} students of S by priority.
ChoiceRulePtr TopByPriorityRule(PriorityRanking pi, int q);

// A rule tabulated on every menu of a ground set (2^n entries).
class ChoiceTable {
 public:
  // ResourceExhausted when n > 20. InvalidArgument when the rule returns a
  // non-subset of the menu or more than q students.
  static absl::StatusOr<ChoiceTable> Tabulate(const ChoiceRule& rule,
                                              const GroundSet& ground);
  // Every menu must be present; the same validation as Tabulate.
  static absl::StatusOr<ChoiceTable> FromChoices(
      int n, int q, std::vector<StudentSet> choices);

  int ground_size() const { return n_; }
  int capacity() const { return q_; }
  StudentSet operator()(StudentSet menu) const {
    return choices_[menu.mask()];
  }

 private:
  ChoiceTable(int n, int q, std::vector<StudentSet> choices)
      : n_(n), q_(q), choices_(std::move(choices)) {}

  int n_;
  int q_;
  std::vector<StudentSet> choices_;
};

ChoiceRulePtr TableChoiceRule(std::string name, ChoiceTable table);

// Per-menu forms of the three choice axioms for a candidate chosen set.
bool NonWastefulAt(int q, StudentSet menu, StudentSet chosen);
// No same-size subset of the menu is strictly better than chosen. Fills
// *better (if non-null) with the first strictly better subset.
absl::StatusOr<bool> PromotesAt(const DistributionalPreference& pref,
                                StudentSet menu, StudentSet chosen,
                                StudentSet* better = nullptr);
// Fills *witness (if non-null) with the first (s, s') whose swap is weakly
// better although s' has priority over s.
absl::StatusOr<bool> NoJustifiedEnvyAt(const DistributionalPreference& pref,
                                       const PriorityRanking& pi,
                                       StudentSet menu, StudentSet chosen,
                                       std::pair<int, int>* witness = nullptr);

struct AxiomViolation {
  StudentSet menu;
  StudentSet chosen;
  // Meaning depends on the axiom: a strictly better subset (promotes), the
  // second menu S' (path independence).
  StudentSet witness;
  int student = -1;
  int other = -1;
};

struct AxiomReport {
  std::string axiom;
  int64_t menus_checked = 0;
  int64_t violation_count = 0;
  // The first kMaxWitnesses violations in increasing menu order.
  std::vector<AxiomViolation> violations;

  static constexpr size_t kMaxWitnesses = 256;
  bool passed() const { return violation_count == 0; }
  void Add(AxiomViolation v);
};

absl::StatusOr<AxiomReport> CheckNonWasteful(const ChoiceRule& rule,
                                             const GroundSet& ground, int q);
absl::StatusOr<AxiomReport> CheckPromotes(const ChoiceRule& rule,
                                          const DistributionalPreference& pref,
                                          const GroundSet& ground, int q);
// student = admitted s, other = rejected s' with a weakly better swap and
// priority over s.
absl::StatusOr<AxiomReport> CheckNoJustifiedEnvy(
    const ChoiceRule& rule, const DistributionalPreference& pref,
    const PriorityRanking& pi, const GroundSet& ground);

struct PathIndependenceReport {
  // Ch(S ∪ S') != Ch(Ch(S) ∪ S'): menu = S, witness = S'.
  AxiomReport direct;
  // s ∉ Ch(S) but Ch(S \ {s}) != Ch(S): menu = S, student = s.
  AxiomReport consistency;
  // s ∈ Ch(S) but s ∉ Ch(S \ {s'}): menu = S, student = s, other = s'.
  AxiomReport substitutability;

  bool passed() const { return direct.passed(); }
  bool decomposition_passed() const {
    return consistency.passed() && substitutability.passed();
  }
  // The direct identity and the two-axiom decomposition reach the same
  // verdict.
  bool agrees() const { return passed() == decomposition_passed(); }
};

absl::StatusOr<PathIndependenceReport> CheckPathIndependence(
    const ChoiceRule& rule, const GroundSet& ground);

struct TrichotomyCase {
  StudentSet menu;
  StudentSet ours;  // Ch^π(S)
  StudentSet alt;
  bool wasteful = false;     // |Ch^π(S)| > |alt(S)|
  bool inferior = false;     // Ch^π(S) ≻ alt(S)
  bool dominated = false;    // Ch^π(S) priority dominates alt(S)
  bool holds() const { return wasteful || inferior || dominated; }
};

struct TrichotomyReport {
  int64_t menus_checked = 0;
  // Every menu where the alternative diverges from Ch^π.
  std::vector<TrichotomyCase> divergences;
  std::vector<TrichotomyCase> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

// FailedPrecondition unless the certificate passed upper-bound and maximizer
// at capacity q.
absl::StatusOr<TrichotomyReport> CheckTrichotomy(
    const ChoiceRule& alt, const DistributionalPreference& pref,
    const PriorityRanking& pi, int q, const GroundSet& ground,
    const StructuralCertificate& certificate,
    const EnumerationBudget& budget = {});

// The trichotomy holds per menu, so quantifying over every alternative
// output T ⊆ S with |T| <= q on every menu covers every alternative rule.
// `divergences` is left empty; only counts and counterexamples are kept.
struct ExhaustiveTrichotomyReport {
  int64_t menus_checked = 0;
  int64_t alternatives_checked = 0;
  int64_t frontier_valued_alternatives = 0;
  std::vector<TrichotomyCase> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

absl::StatusOr<ExhaustiveTrichotomyReport> CheckTrichotomyAllRules(
    const DistributionalPreference& pref, const PriorityRanking& pi, int q,
    const GroundSet& ground, const StructuralCertificate& certificate,
    const EnumerationBudget& budget = {});

struct MenuCandidates {
  StudentSet menu;
  StudentSet greedy;  // Ch^π(menu)
  int frontier_size = 0;
  // Outputs T ⊆ menu, |T| <= q, meeting all three axioms on this menu.
  std::vector<StudentSet> passing;
};

// The three choice axioms are per-menu conditions, so the rules meeting all
// of them are exactly the products of per-menu passing outputs.
struct AxiomaticRuleCensus {
  std::vector<MenuCandidates> menus;
  // log10 of the number of frontier-valued rules.
  double log10_frontier_valued_rules = 0;
  // Number of rules passing all three axioms (saturating).
  uint64_t passing_rules = 0;
  // Exactly one passing rule and it equals Ch^π.
  bool unique_and_greedy() const;
};

absl::StatusOr<AxiomaticRuleCensus> CensusAxiomaticRules(
    const DistributionalPreference& pref, const PriorityRanking& pi, int q,
    const GroundSet& ground, const EnumerationBudget& budget = {});

// Revealed edges s -> s' (s chosen over rejected s' although the swap is
// weakly better), with the first menu that reveals each edge.
struct RevealedRelation {
  int n = 0;
  std::vector<StudentSet> successors;
  // menus[s][s'] is meaningful only when successors[s] contains s'.
  std::vector<std::vector<StudentSet>> menus;
};

absl::StatusOr<RevealedRelation> BuildRevealedRelation(
    const ChoiceRule& rule, const DistributionalPreference& pref,
    const GroundSet& ground);

// students[k] -> students[k+1 mod K] is revealed at menus[k].
struct CycleWitness {
  std::vector<int> students;
  std::vector<StudentSet> menus;
};

using RevealResult = std::variant<PriorityRanking, CycleWitness>;

// A shortest revealed cycle if one exists; otherwise the topological
// completion of the revealed relation, ties broken by ascending student id.
// InvalidArgument when the rule chooses more than q students somewhere.
absl::StatusOr<RevealResult> RevealPriorities(
    const ChoiceRule& rule, const DistributionalPreference& pref,
    const GroundSet& ground, int q);

}  // namespace distchoice

#endif  // DISTCHOICE_CHOICE_H_
