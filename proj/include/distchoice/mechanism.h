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

// Two-sided school-choice markets, student-proposing deferred acceptance over
// per-school distributional choice rules, and matching-level axiom checkers.

#ifndef DISTCHOICE_MECHANISM_H_
#define DISTCHOICE_MECHANISM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "distchoice/core.h"
#include "distchoice/frontier.h"

namespace distchoice {

inline constexpr int kOutsideOption = -1;

struct School {
  std::string name;
  int capacity = 1;
  PriorityRanking priority = PriorityRanking::Identity(0);
  PreferencePtr preference;
};

// Acceptable schools, best first. Unlisted schools are unacceptable.
using StudentPreference = std::vector<int>;

class Market {
 public:
  // Fails unless every capacity is >= 1, every priority ranks exactly the
  // ground set, every preference is set, and every student list has one
  // entry per student with distinct valid school ids.
  static absl::StatusOr<Market> Create(GroundSet ground,
                                       std::vector<School> schools,
                                       std::vector<StudentPreference> prefs);

  const GroundSet& ground() const { return ground_; }
  int num_students() const { return ground_.size(); }
  int num_schools() const { return static_cast<int>(schools_.size()); }
  const std::vector<School>& schools() const { return schools_; }
  const School& school(int c) const { return schools_[c]; }
  const std::vector<StudentPreference>& preferences() const { return prefs_; }

  // Position of c in s's list; -1 when c is unacceptable.
  int Rank(int student, int school) const {
    return rank_[student][school];
  }
  // c P_s assigned, where assigned may be the outside option.
  bool Prefers(int student, int school, int assigned) const;
  // The same market with one student's list replaced. Fails on an invalid
  // list.
  absl::StatusOr<Market> WithPreference(int student,
                                        StudentPreference pref) const;

 private:
  Market(GroundSet ground, std::vector<School> schools,
         std::vector<StudentPreference> prefs);

  GroundSet ground_;
  std::vector<School> schools_;
  std::vector<StudentPreference> prefs_;
  std::vector<std::vector<int>> rank_;
};

struct Matching {
  // School id per student, or kOutsideOption.
  std::vector<int> assignment;

  StudentSet AssignedTo(int school) const;
  friend bool operator==(const Matching&, const Matching&) = default;
};

// InvalidArgument unless the matching covers every student with valid
// school ids and respects capacities.
absl::Status ValidateMatching(const Market& market, const Matching& mu);

struct DaRound {
  int round = 0;
  // (student, school) in ascending student order.
  std::vector<std::pair<int, int>> proposals;
  // Tentatively held set per school after the round.
  std::vector<StudentSet> held;
  // (student, school) in ascending student order.
  std::vector<std::pair<int, int>> rejections;
};

struct DaOptions {
  // Keep the per-round trace. Defaults to on for markets of at most 16
  // students when unset.
  std::optional<bool> keep_trace;
  EnumerationBudget budget;
  // Order in which schools run their choice within a round; empty means
  // ascending id. Rejections within a round are applied simultaneously, so
  // the outcome does not depend on it.
  std::vector<int> school_order;
};

struct DaResult {
  Matching matching;
  int rounds = 0;
  std::vector<DaRound> trace;
};

absl::StatusOr<DaResult> DeferredAcceptance(const Market& market,
                                            const DaOptions& options = {});

// Control mechanism: in round k every unassigned student applies to the k-th
// school on their list and each school permanently admits applicants by
// priority while seats remain.
absl::StatusOr<Matching> ImmediateAcceptance(const Market& market);

using Mechanism = std::function<absl::StatusOr<Matching>(const Market&)>;

Mechanism DeferredAcceptanceMechanism(EnumerationBudget budget = {});
Mechanism ImmediateAcceptanceMechanism();

struct MatchingViolation {
  int school = -1;
  int student = -1;
  int other = -1;
  // A strictly better same-size subset of the demand set (promotes).
  StudentSet witness;
};

struct MatchingReport {
  std::string axiom;
  int64_t cases_checked = 0;
  std::vector<MatchingViolation> violations;
  bool passed() const { return violations.empty(); }
};

// (school, student) with c P_s μ(s) while c has an empty seat.
absl::StatusOr<MatchingReport> CheckMatchingNonWasteful(const Market& market,
                                                        const Matching& mu);
// A same-size subset of the demand set D_c(μ) = {s : c R_s μ(s)} strictly
// better than μ⁻¹(c).
absl::StatusOr<MatchingReport> CheckMatchingPromotes(
    const Market& market, const Matching& mu,
    const EnumerationBudget& budget = {});
// school, admitted student, envious other.
absl::StatusOr<MatchingReport> CheckMatchingNoJustifiedEnvy(
    const Market& market, const Matching& mu);
absl::StatusOr<MatchingReport> CheckIndividualRationality(
    const Market& market, const Matching& mu);

struct MatchingAxiomReport {
  MatchingReport non_wasteful;
  MatchingReport promotes;
  MatchingReport no_justified_envy;
  MatchingReport individual_rationality;
  bool passed() const {
    return non_wasteful.passed() && promotes.passed() &&
           no_justified_envy.passed() && individual_rationality.passed();
  }
};

absl::StatusOr<MatchingAxiomReport> CheckMatchingAxioms(
    const Market& market, const Matching& mu,
    const EnumerationBudget& budget = {});

// Every strict ranking of every subset of {0, ..., num_schools - 1}, the
// empty list first, then by length and lexicographically.
std::vector<StudentPreference> AllStudentPreferences(int num_schools);

struct Deviation {
  int student = -1;
  StudentPreference report;
  int truthful = kOutsideOption;
  int deviated = kOutsideOption;
};

struct StrategyProofnessReport {
  int64_t reports_checked = 0;
  std::vector<Deviation> deviations;
  bool passed() const { return deviations.empty(); }
};

// ResourceExhausted when students × reports exceeds max_reports.
absl::StatusOr<StrategyProofnessReport> CheckStrategyProofness(
    const Market& market, const Mechanism& mechanism,
    int64_t max_reports = 1 << 16);

// Every capacity-respecting matching passing the four matching checkers, in
// lexicographic order of assignments. ResourceExhausted when
// (schools + 1)^students exceeds max_matchings.
absl::StatusOr<std::vector<Matching>> EnumerateAxiomaticMatchings(
    const Market& market, int64_t max_matchings = 1 << 20,
    const EnumerationBudget& budget = {});

// Profiles share the ground set and schools and differ in student lists.
// A mechanism on this domain is a table choosing one axiomatic matching per
// profile; it is strategy-proof on the domain when no student gains by
// switching to their list in another profile that agrees elsewhere.
struct MechanismCensus {
  std::vector<std::vector<Matching>> candidates;
  int64_t tables_checked = 0;
  // Each passing table lists one matching per profile.
  std::vector<std::vector<Matching>> passing_tables;
};

absl::StatusOr<MechanismCensus> CensusMechanisms(
    const std::vector<Market>& profiles, int64_t max_tables = 1 << 20,
    const EnumerationBudget& budget = {});

}  // namespace distchoice

#endif  // DISTCHOICE_MECHANISM_H_
