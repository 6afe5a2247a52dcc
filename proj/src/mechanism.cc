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

#include "distchoice/mechanism.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "distchoice/choice.h"
#include "distchoice/subsets.h"

namespace distchoice {
namespace {

absl::Status ValidateStudentPreference(const StudentPreference& pref,
                                       int num_schools, int student) {
  std::vector<bool> seen(num_schools, false);
  for (int c : pref) {
    if (c < 0 || c >= num_schools) {
      return absl::InvalidArgumentError(absl::StrCat(
          "student ", student, " lists unknown school ", c));
    }
    if (seen[c]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "student ", student, " lists school ", c, " twice"));
    }
    seen[c] = true;
  }
  return absl::OkStatus();
}

// c R_s μ(s): s is assigned to c or prefers c to their assignment.
bool WeaklyDemands(const Market& market, const Matching& mu, int s, int c) {
  return mu.assignment[s] == c || market.Prefers(s, c, mu.assignment[s]);
}

}  // namespace

Market::Market(GroundSet ground, std::vector<School> schools,
               std::vector<StudentPreference> prefs)
    : ground_(std::move(ground)), schools_(std::move(schools)),
      prefs_(std::move(prefs)) {
  rank_.assign(ground_.size(), std::vector<int>(schools_.size(), -1));
  for (int s = 0; s < ground_.size(); ++s) {
    for (size_t k = 0; k < prefs_[s].size(); ++k) {
      rank_[s][prefs_[s][k]] = static_cast<int>(k);
    }
  }
}

absl::StatusOr<Market> Market::Create(GroundSet ground,
                                      std::vector<School> schools,
                                      std::vector<StudentPreference> prefs) {
  const int n = ground.size();
  const int m = static_cast<int>(schools.size());
  for (int c = 0; c < m; ++c) {
    const School& school = schools[c];
    if (school.capacity < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("school ", school.name, ": capacity must be >= 1"));
    }
    if (school.priority.size() != n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "size mismatch: school ", school.name, " ranks ",
          school.priority.size(), " students, the market has ", n));
    }
    if (school.preference == nullptr) {
      return absl::InvalidArgumentError(
          absl::StrCat("school ", school.name, " has no preference"));
    }
  }
  if (static_cast<int>(prefs.size()) != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "size mismatch: ", prefs.size(), " preference lists for ", n,
        " students"));
  }
  for (int s = 0; s < n; ++s) {
    if (absl::Status st = ValidateStudentPreference(prefs[s], m, s);
        !st.ok()) {
      return st;
    }
  }
  return Market(std::move(ground), std::move(schools), std::move(prefs));
}

bool Market::Prefers(int student, int school, int assigned) const {
  const int r = rank_[student][school];
  if (r < 0) return false;
  if (assigned == kOutsideOption) return true;
  return r < rank_[student][assigned];
}

absl::StatusOr<Market> Market::WithPreference(int student,
                                              StudentPreference pref) const {
  if (absl::Status st =
          ValidateStudentPreference(pref, num_schools(), student);
      !st.ok()) {
    return st;
  }
  std::vector<StudentPreference> prefs = prefs_;
  prefs[student] = std::move(pref);
  return Market(ground_, schools_, std::move(prefs));
}

StudentSet Matching::AssignedTo(int school) const {
  StudentSet out;
  for (size_t s = 0; s < assignment.size(); ++s) {
    if (assignment[s] == school) out = out.With(static_cast<int>(s));
  }
  return out;
}

absl::Status ValidateMatching(const Market& market, const Matching& mu) {
  if (static_cast<int>(mu.assignment.size()) != market.num_students()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "size mismatch: matching covers ", mu.assignment.size(),
        " students, the market has ", market.num_students()));
  }
  for (int c : mu.assignment) {
    if (c != kOutsideOption && (c < 0 || c >= market.num_schools())) {
      return absl::InvalidArgumentError(
          absl::StrCat("matching names unknown school ", c));
    }
  }
  for (int c = 0; c < market.num_schools(); ++c) {
    if (mu.AssignedTo(c).size() > market.school(c).capacity) {
      return absl::InvalidArgumentError(absl::StrCat(
          "school ", market.school(c).name, " is over capacity"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<DaResult> DeferredAcceptance(const Market& market,
                                            const DaOptions& options) {
  const int n = market.num_students();
  const int m = market.num_schools();
  const bool keep_trace = options.keep_trace.value_or(n <= 16);
  std::vector<int> order = options.school_order;
  if (order.empty()) {
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
  } else {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int c = 0; c < m; ++c) {
      if (static_cast<int>(sorted.size()) != m || sorted[c] != c) {
        return absl::InvalidArgumentError(
            "school order must be a permutation of the schools");
      }
    }
  }

  std::vector<int> next(n, 0);  // index of the next school to propose to
  std::vector<StudentSet> held(m);
  std::vector<int> holder(n, kOutsideOption);
  DaResult result;
  while (true) {
    DaRound round;
    round.round = result.rounds + 1;
    std::vector<StudentSet> applicants = held;
    for (int s = 0; s < n; ++s) {
      const StudentPreference& list = market.preferences()[s];
      if (holder[s] != kOutsideOption ||
          next[s] >= static_cast<int>(list.size())) {
        continue;
      }
      const int c = list[next[s]];
      applicants[c] = applicants[c].With(s);
      round.proposals.emplace_back(s, c);
    }
    if (round.proposals.empty()) break;
    ++result.rounds;
    std::vector<StudentSet> rejected(m);
    for (int c : order) {
      const School& school = market.school(c);
      absl::StatusOr<StudentSet> chosen =
          DistributionalChoice(*school.preference, school.priority,
                               school.capacity, applicants[c],
                               options.budget);
      if (!chosen.ok()) return chosen.status();
      held[c] = *chosen;
      rejected[c] = applicants[c] - *chosen;
    }
    for (int c = 0; c < m; ++c) {
      ForEachMember(held[c], [&](int s) { holder[s] = c; });
      ForEachMember(rejected[c], [&](int s) {
        holder[s] = kOutsideOption;
        ++next[s];
      });
    }
    if (keep_trace) {
      for (int s = 0; s < n; ++s) {
        for (int c = 0; c < m; ++c) {
          if (rejected[c].Contains(s)) round.rejections.emplace_back(s, c);
        }
      }
      round.held = held;
      result.trace.push_back(std::move(round));
    }
  }
  result.matching.assignment = holder;
  return result;
}

absl::StatusOr<Matching> ImmediateAcceptance(const Market& market) {
  const int n = market.num_students();
  const int m = market.num_schools();
  Matching mu;
  mu.assignment.assign(n, kOutsideOption);
  std::vector<int> seats(m);
  for (int c = 0; c < m; ++c) seats[c] = market.school(c).capacity;
  for (int k = 0; k < m; ++k) {
    std::vector<StudentSet> applicants(m);
    for (int s = 0; s < n; ++s) {
      const StudentPreference& list = market.preferences()[s];
      if (mu.assignment[s] != kOutsideOption ||
          k >= static_cast<int>(list.size())) {
        continue;
      }
      applicants[list[k]] = applicants[list[k]].With(s);
    }
    for (int c = 0; c < m; ++c) {
      for (int s : market.school(c).priority.Sorted(applicants[c])) {
        if (seats[c] == 0) break;
        mu.assignment[s] = c;
        --seats[c];
      }
    }
  }
  return mu;
}

Mechanism DeferredAcceptanceMechanism(EnumerationBudget budget) {
  return [budget](const Market& market) -> absl::StatusOr<Matching> {
    DaOptions options;
    options.keep_trace = false;
    options.budget = budget;
    absl::StatusOr<DaResult> result = DeferredAcceptance(market, options);
    if (!result.ok()) return result.status();
    return std::move(result->matching);
  };
}

Mechanism ImmediateAcceptanceMechanism() {
  return [](const Market& market) { return ImmediateAcceptance(market); };
}

absl::StatusOr<MatchingReport> CheckMatchingNonWasteful(const Market& market,
                                                        const Matching& mu) {
  if (absl::Status st = ValidateMatching(market, mu); !st.ok()) return st;
  MatchingReport report;
  report.axiom = "non-wasteful";
  for (int c = 0; c < market.num_schools(); ++c) {
    const bool full =
        mu.AssignedTo(c).size() == market.school(c).capacity;
    for (int s = 0; s < market.num_students(); ++s) {
      ++report.cases_checked;
      if (!full && market.Prefers(s, c, mu.assignment[s])) {
        report.violations.push_back({c, s, -1, StudentSet()});
      }
    }
  }
  return report;
}

absl::StatusOr<MatchingReport> CheckMatchingPromotes(
    const Market& market, const Matching& mu,
    const EnumerationBudget& budget) {
  if (absl::Status st = ValidateMatching(market, mu); !st.ok()) return st;
  MatchingReport report;
  report.axiom = "promotes";
  for (int c = 0; c < market.num_schools(); ++c) {
    ++report.cases_checked;
    StudentSet demand;
    for (int s = 0; s < market.num_students(); ++s) {
      if (WeaklyDemands(market, mu, s, c)) demand = demand.With(s);
    }
    const StudentSet assigned = mu.AssignedTo(c);
    if (Binomial(demand.size(), assigned.size()) > budget.max_subsets) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "budget exceeded: demand set of school ", market.school(c).name,
          " has too many same-size subsets"));
    }
    StudentSet better;
    absl::StatusOr<bool> ok =
        PromotesAt(*market.school(c).preference, demand, assigned, &better);
    if (!ok.ok()) return ok.status();
    if (!*ok) report.violations.push_back({c, -1, -1, better});
  }
  return report;
}

absl::StatusOr<MatchingReport> CheckMatchingNoJustifiedEnvy(
    const Market& market, const Matching& mu) {
  if (absl::Status st = ValidateMatching(market, mu); !st.ok()) return st;
  MatchingReport report;
  report.axiom = "no-justified-envy";
  for (int c = 0; c < market.num_schools(); ++c) {
    const School& school = market.school(c);
    const StudentSet assigned = mu.AssignedTo(c);
    for (int t = 0; t < market.num_students(); ++t) {
      if (!market.Prefers(t, c, mu.assignment[t])) continue;
      for (int s : assigned.Members()) {
        ++report.cases_checked;
        if (school.priority.Prefers(s, t)) continue;
        absl::StatusOr<Comparison> cmp =
            school.preference->Compare(assigned.Swap(s, t), assigned);
        if (!cmp.ok()) return cmp.status();
        if (WeaklyBetter(*cmp)) {
          report.violations.push_back({c, s, t, StudentSet()});
        }
      }
    }
  }
  return report;
}

absl::StatusOr<MatchingReport> CheckIndividualRationality(
    const Market& market, const Matching& mu) {
  if (absl::Status st = ValidateMatching(market, mu); !st.ok()) return st;
  MatchingReport report;
  report.axiom = "individual-rationality";
  for (int s = 0; s < market.num_students(); ++s) {
    ++report.cases_checked;
    const int c = mu.assignment[s];
    if (c != kOutsideOption && market.Rank(s, c) < 0) {
      report.violations.push_back({c, s, -1, StudentSet()});
    }
  }
  return report;
}

absl::StatusOr<MatchingAxiomReport> CheckMatchingAxioms(
    const Market& market, const Matching& mu,
    const EnumerationBudget& budget) {
  MatchingAxiomReport report;
  absl::StatusOr<MatchingReport> nw = CheckMatchingNonWasteful(market, mu);
  if (!nw.ok()) return nw.status();
  absl::StatusOr<MatchingReport> pr =
      CheckMatchingPromotes(market, mu, budget);
  if (!pr.ok()) return pr.status();
  absl::StatusOr<MatchingReport> nje =
      CheckMatchingNoJustifiedEnvy(market, mu);
  if (!nje.ok()) return nje.status();
  absl::StatusOr<MatchingReport> ir = CheckIndividualRationality(market, mu);
  if (!ir.ok()) return ir.status();
  report.non_wasteful = *std::move(nw);
  report.promotes = *std::move(pr);
  report.no_justified_envy = *std::move(nje);
  report.individual_rationality = *std::move(ir);
  return report;
}

std::vector<StudentPreference> AllStudentPreferences(int num_schools) {
  std::vector<StudentPreference> out;
  for (int len = 0; len <= num_schools; ++len) {
    std::vector<StudentPreference> of_len;
    ForEachSubsetOfSize(StudentSet::FirstN(num_schools), len,
                        [&](StudentSet subset) {
                          std::vector<int> list = subset.Members();
                          do {
                            of_len.push_back(list);
                          } while (std::next_permutation(list.begin(),
                                                         list.end()));
                          return true;
                        });
    std::sort(of_len.begin(), of_len.end());
    out.insert(out.end(), of_len.begin(), of_len.end());
  }
  return out;
}

absl::StatusOr<StrategyProofnessReport> CheckStrategyProofness(
    const Market& market, const Mechanism& mechanism, int64_t max_reports) {
  const std::vector<StudentPreference> reports =
      AllStudentPreferences(market.num_schools());
  const int64_t total =
      static_cast<int64_t>(reports.size()) * market.num_students();
  if (total > max_reports) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: ", total, " misreports, limit is ", max_reports));
  }
  absl::StatusOr<Matching> truthful = mechanism(market);
  if (!truthful.ok()) return truthful.status();
  StrategyProofnessReport report;
  for (int s = 0; s < market.num_students(); ++s) {
    const int honest = truthful->assignment[s];
    for (const StudentPreference& lie : reports) {
      if (lie == market.preferences()[s]) continue;
      ++report.reports_checked;
      absl::StatusOr<Market> deviated = market.WithPreference(s, lie);
      if (!deviated.ok()) return deviated.status();
      absl::StatusOr<Matching> outcome = mechanism(*deviated);
      if (!outcome.ok()) return outcome.status();
      const int got = outcome->assignment[s];
      if (got != kOutsideOption && market.Prefers(s, got, honest)) {
        report.deviations.push_back({s, lie, honest, got});
      }
    }
  }
  return report;
}

absl::StatusOr<std::vector<Matching>> EnumerateAxiomaticMatchings(
    const Market& market, int64_t max_matchings,
    const EnumerationBudget& budget) {
  const int n = market.num_students();
  const int m = market.num_schools();
  double total = 1;
  for (int s = 0; s < n; ++s) total *= m + 1;
  if (total > static_cast<double>(max_matchings)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: ", total, " matchings, limit is ", max_matchings));
  }
  std::vector<Matching> out;
  Matching mu;
  // Odometer over assignments, kOutsideOption first.
  mu.assignment.assign(n, kOutsideOption);
  while (true) {
    if (ValidateMatching(market, mu).ok()) {
      absl::StatusOr<MatchingAxiomReport> report =
          CheckMatchingAxioms(market, mu, budget);
      if (!report.ok()) return report.status();
      if (report->passed()) out.push_back(mu);
    }
    int s = n - 1;
    while (s >= 0 && mu.assignment[s] == m - 1) {
      mu.assignment[s] = kOutsideOption;
      --s;
    }
    if (s < 0) break;
    ++mu.assignment[s];
  }
  return out;
}

absl::StatusOr<MechanismCensus> CensusMechanisms(
    const std::vector<Market>& profiles, int64_t max_tables,
    const EnumerationBudget& budget) {
  MechanismCensus census;
  double total = 1;
  for (const Market& market : profiles) {
    absl::StatusOr<std::vector<Matching>> candidates =
        EnumerateAxiomaticMatchings(market, int64_t{1} << 20, budget);
    if (!candidates.ok()) return candidates.status();
    total *= static_cast<double>(candidates->size());
    census.candidates.push_back(*std::move(candidates));
  }
  if (total > static_cast<double>(max_tables)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: ", total, " mechanism tables, limit is ",
        max_tables));
  }
  if (total == 0) return census;

  // Pairs of profiles differing only in one student's list.
  struct Neighbor {
    size_t from, to;
    int student;
  };
  std::vector<Neighbor> neighbors;
  for (size_t a = 0; a < profiles.size(); ++a) {
    for (size_t b = 0; b < profiles.size(); ++b) {
      if (a == b) continue;
      int differing = -1;
      int count = 0;
      for (int s = 0; s < profiles[a].num_students(); ++s) {
        if (profiles[a].preferences()[s] != profiles[b].preferences()[s]) {
          differing = s;
          ++count;
        }
      }
      if (count == 1) neighbors.push_back({a, b, differing});
    }
  }

  std::vector<size_t> pick(profiles.size(), 0);
  while (true) {
    ++census.tables_checked;
    bool strategy_proof = true;
    for (const Neighbor& nb : neighbors) {
      const int truthful = census.candidates[nb.from][pick[nb.from]]
                               .assignment[nb.student];
      const int lied =
          census.candidates[nb.to][pick[nb.to]].assignment[nb.student];
      if (lied != kOutsideOption &&
          profiles[nb.from].Prefers(nb.student, lied, truthful)) {
        strategy_proof = false;
        break;
      }
    }
    if (strategy_proof) {
      std::vector<Matching> table;
      for (size_t p = 0; p < profiles.size(); ++p) {
        table.push_back(census.candidates[p][pick[p]]);
      }
      census.passing_tables.push_back(std::move(table));
    }
    size_t p = 0;
    while (p < pick.size() && pick[p] + 1 == census.candidates[p].size()) {
      pick[p] = 0;
      ++p;
    }
    if (p == pick.size()) break;
    ++pick[p];
  }
  return census;
}

}  // namespace distchoice
