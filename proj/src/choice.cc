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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "distchoice/matroid.h"
#include "distchoice/subsets.h"

namespace distchoice {
namespace {

inline constexpr int kMaxTabulatedGround = 20;
inline constexpr int kMaxPairwiseGround = 12;

class GreedyRule : public ChoiceRule {
 public:
  GreedyRule(PreferencePtr pref, PriorityRanking pi, int q,
             EnumerationBudget budget, ChoicePath path)
      : pref_(std::move(pref)), pi_(std::move(pi)), q_(q), budget_(budget),
        path_(path) {}

  int capacity() const override { return q_; }
  absl::StatusOr<StudentSet> Choose(StudentSet menu) const override {
    return DistributionalChoice(*pref_, pi_, q_, menu, budget_, path_);
  }
  std::string name() const override {
    return absl::StrCat("distributional-choice(", pref_->name(), ")");
  }

 private:
  PreferencePtr pref_;
  PriorityRanking pi_;
  int q_;
  EnumerationBudget budget_;
  ChoicePath path_;
};

class FnRule : public ChoiceRule {
 public:
  FnRule(std::string name, int q, std::function<StudentSet(StudentSet)> fn)
      : name_(std::move(name)), q_(q), fn_(std::move(fn)) {}

  int capacity() const override { return q_; }
  absl::StatusOr<StudentSet> Choose(StudentSet menu) const override {
    return fn_(menu);
  }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  int q_;
  std::function<StudentSet(StudentSet)> fn_;
};

class TableRule : public ChoiceRule {
 public:
  TableRule(std::string name, ChoiceTable table)
      : name_(std::move(name)), table_(std::move(table)) {}

  int capacity() const override { return table_.capacity(); }
  absl::StatusOr<StudentSet> Choose(StudentSet menu) const override {
    if (!menu.IsSubsetOf(StudentSet::FirstN(table_.ground_size()))) {
      return absl::InvalidArgumentError("menu outside the tabulated ground");
    }
    return table_(menu);
  }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  ChoiceTable table_;
};

absl::Status ValidateChoice(StudentSet menu, StudentSet chosen, int q) {
  if (!chosen.IsSubsetOf(menu)) {
    return absl::InvalidArgumentError(
        "not a choice rule: output is not a subset of the menu");
  }
  if (chosen.size() > q) {
    return absl::InvalidArgumentError(absl::StrCat(
        "not a choice rule: output has ", chosen.size(),
        " students, capacity is ", q));
  }
  return absl::OkStatus();
}

absl::Status CheckPairwiseGround(const GroundSet& ground) {
  if (ground.size() > kMaxPairwiseGround) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: pairwise menu checks need a ground set of at most ",
        kMaxPairwiseGround, " students"));
  }
  return absl::OkStatus();
}

uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

absl::StatusOr<TrichotomyCase> Classify(const DistributionalPreference& pref,
                                        const PriorityRanking& pi,
                                        StudentSet menu, StudentSet ours,
                                        StudentSet alt) {
  TrichotomyCase c;
  c.menu = menu;
  c.ours = ours;
  c.alt = alt;
  c.wasteful = ours.size() > alt.size();
  if (!pref.equal_size_only() || ours.size() == alt.size()) {
    absl::StatusOr<Comparison> cmp = pref.Compare(ours, alt);
    if (!cmp.ok()) return cmp.status();
    c.inferior = *cmp == Comparison::kStrictlyBetter;
  }
  c.dominated = PriorityDominates(pi, ours, alt);
  return c;
}

absl::Status RequireUniquenessCertificate(
    const StructuralCertificate& certificate, int q) {
  if (certificate.q != q || !certificate.SupportsUniqueness()) {
    return absl::FailedPreconditionError(
        "preference not certified: upper-bound and maximizer must pass at "
        "this capacity");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<StudentSet> DistributionalChoice(
    const DistributionalPreference& pref, const PriorityRanking& pi, int q,
    StudentSet menu, const EnumerationBudget& budget, ChoicePath path) {
  if (q < 1) return absl::InvalidArgumentError("capacity must be >= 1");
  if (!menu.IsSubsetOf(StudentSet::FirstN(pi.size()))) {
    return absl::InvalidArgumentError(
        "size mismatch: menu has students outside the priority ranking");
  }
  std::shared_ptr<const MatroidOracle> matroid = pref.rank_matroid();
  if (path == ChoicePath::kMatroidFastPath && matroid == nullptr) {
    return absl::FailedPreconditionError(
        "the preference declares no rank matroid");
  }
  if (path != ChoicePath::kEnumeration && matroid != nullptr) {
    if (!menu.IsSubsetOf(StudentSet::FirstN(matroid->ground_size()))) {
      return absl::InvalidArgumentError(
          "size mismatch: menu has students outside the matroid");
    }
    MatroidPtr frontier =
        FrontierMatroid(matroid, menu, std::min(q, menu.size()));
    return GreedyBasis(*frontier, menu, pi);
  }

  absl::StatusOr<FrontierResult> frontier =
      ComputeFrontier(pref, menu, q, budget);
  if (!frontier.ok()) return frontier.status();
  StudentSet kept;
  for (int s : pi.Sorted(menu)) {
    const StudentSet tentative = kept.With(s);
    for (StudentSet member : frontier->members) {
      if (tentative.IsSubsetOf(member)) {
        kept = tentative;
        break;
      }
    }
  }
  return kept;
}

ChoiceRulePtr DistributionalChoiceRule(PreferencePtr pref, PriorityRanking pi,
                                       int q, EnumerationBudget budget,
                                       ChoicePath path) {
  return std::make_shared<GreedyRule>(std::move(pref), std::move(pi), q,
                                      budget, path);
}

ChoiceRulePtr FunctionChoiceRule(std::string name, int q,
                                 std::function<StudentSet(StudentSet)> fn) {
  return std::make_shared<FnRule>(std::move(name), q, std::move(fn));
}

ChoiceRulePtr TopByPriorityRule(PriorityRanking pi, int q) {
  return FunctionChoiceRule(
      "top-by-priority", q, [pi = std::move(pi), q](StudentSet menu) {
        StudentSet kept;
        for (int s : pi.Sorted(menu)) {
          if (kept.size() == q) break;
          kept = kept.With(s);
        }
        return kept;
      });
}

absl::StatusOr<ChoiceTable> ChoiceTable::Tabulate(const ChoiceRule& rule,
                                                  const GroundSet& ground) {
  const int n = ground.size();
  if (n > kMaxTabulatedGround) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: tabulating a rule needs a ground set of at most ",
        kMaxTabulatedGround, " students"));
  }
  std::vector<StudentSet> choices(uint64_t{1} << n);
  for (uint64_t mask = 0; mask < choices.size(); ++mask) {
    const StudentSet menu(mask);
    absl::StatusOr<StudentSet> chosen = rule.Choose(menu);
    if (!chosen.ok()) return chosen.status();
    if (absl::Status st = ValidateChoice(menu, *chosen, rule.capacity());
        !st.ok()) {
      return st;
    }
    choices[mask] = *chosen;
  }
  return ChoiceTable(n, rule.capacity(), std::move(choices));
}

absl::StatusOr<ChoiceTable> ChoiceTable::FromChoices(
    int n, int q, std::vector<StudentSet> choices) {
  if (n < 0 || n > kMaxTabulatedGround) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: tabulating a rule needs a ground set of at most ",
        kMaxTabulatedGround, " students"));
  }
  if (choices.size() != (uint64_t{1} << n)) {
    return absl::InvalidArgumentError(
        absl::StrCat("size mismatch: a table over ", n, " students needs ",
                     uint64_t{1} << n, " entries"));
  }
  for (uint64_t mask = 0; mask < choices.size(); ++mask) {
    if (absl::Status st = ValidateChoice(StudentSet(mask), choices[mask], q);
        !st.ok()) {
      return st;
    }
  }
  return ChoiceTable(n, q, std::move(choices));
}

ChoiceRulePtr TableChoiceRule(std::string name, ChoiceTable table) {
  return std::make_shared<TableRule>(std::move(name), std::move(table));
}

bool NonWastefulAt(int q, StudentSet menu, StudentSet chosen) {
  return chosen.size() == std::min(q, menu.size());
}

absl::StatusOr<bool> PromotesAt(const DistributionalPreference& pref,
                                StudentSet menu, StudentSet chosen,
                                StudentSet* better) {
  absl::Status status;
  bool promotes = true;
  ForEachSubsetOfSize(menu, chosen.size(), [&](StudentSet other) {
    if (other == chosen) return true;
    absl::StatusOr<Comparison> c = pref.Compare(other, chosen);
    if (!c.ok()) {
      status = c.status();
      return false;
    }
    if (*c == Comparison::kStrictlyBetter) {
      promotes = false;
      if (better != nullptr) *better = other;
      return false;
    }
    return true;
  });
  if (!status.ok()) return status;
  return promotes;
}

absl::StatusOr<bool> NoJustifiedEnvyAt(const DistributionalPreference& pref,
                                       const PriorityRanking& pi,
                                       StudentSet menu, StudentSet chosen,
                                       std::pair<int, int>* witness) {
  const StudentSet rejected = menu - chosen;
  for (int s : chosen.Members()) {
    for (int t : rejected.Members()) {
      if (pi.Prefers(s, t)) continue;
      absl::StatusOr<Comparison> c = pref.Compare(chosen.Swap(s, t), chosen);
      if (!c.ok()) return c.status();
      if (WeaklyBetter(*c)) {
        if (witness != nullptr) *witness = {s, t};
        return false;
      }
    }
  }
  return true;
}

void AxiomReport::Add(AxiomViolation v) {
  ++violation_count;
  if (violations.size() < kMaxWitnesses) violations.push_back(v);
}

absl::StatusOr<AxiomReport> CheckNonWasteful(const ChoiceRule& rule,
                                             const GroundSet& ground, int q) {
  absl::StatusOr<ChoiceTable> table = ChoiceTable::Tabulate(rule, ground);
  if (!table.ok()) return table.status();
  AxiomReport report;
  report.axiom = "non-wasteful";
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    ++report.menus_checked;
    const StudentSet chosen = (*table)(menu);
    if (!NonWastefulAt(q, menu, chosen)) {
      report.Add({menu, chosen, StudentSet()});
    }
  });
  return report;
}

absl::StatusOr<AxiomReport> CheckPromotes(const ChoiceRule& rule,
                                          const DistributionalPreference& pref,
                                          const GroundSet& ground, int q) {
  if (q < 1) return absl::InvalidArgumentError("capacity must be >= 1");
  absl::StatusOr<ChoiceTable> table = ChoiceTable::Tabulate(rule, ground);
  if (!table.ok()) return table.status();
  AxiomReport report;
  report.axiom = "promotes";
  absl::Status status;
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    if (!status.ok()) return;
    ++report.menus_checked;
    const StudentSet chosen = (*table)(menu);
    StudentSet better;
    absl::StatusOr<bool> ok = PromotesAt(pref, menu, chosen, &better);
    if (!ok.ok()) {
      status = ok.status();
    } else if (!*ok) {
      report.Add({menu, chosen, better});
    }
  });
  if (!status.ok()) return status;
  return report;
}

absl::StatusOr<AxiomReport> CheckNoJustifiedEnvy(
    const ChoiceRule& rule, const DistributionalPreference& pref,
    const PriorityRanking& pi, const GroundSet& ground) {
  absl::StatusOr<ChoiceTable> table = ChoiceTable::Tabulate(rule, ground);
  if (!table.ok()) return table.status();
  AxiomReport report;
  report.axiom = "no-justified-envy";
  absl::Status status;
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    if (!status.ok()) return;
    ++report.menus_checked;
    const StudentSet chosen = (*table)(menu);
    const StudentSet rejected = menu - chosen;
    // Every violating pair is reported, not only the first per menu.
    for (int s : chosen.Members()) {
      for (int t : rejected.Members()) {
        if (pi.Prefers(s, t)) continue;
        absl::StatusOr<Comparison> c =
            pref.Compare(chosen.Swap(s, t), chosen);
        if (!c.ok()) {
          status = c.status();
          return;
        }
        if (WeaklyBetter(*c)) report.Add({menu, chosen, {}, s, t});
      }
    }
  });
  if (!status.ok()) return status;
  return report;
}

absl::StatusOr<PathIndependenceReport> CheckPathIndependence(
    const ChoiceRule& rule, const GroundSet& ground) {
  if (absl::Status st = CheckPairwiseGround(ground); !st.ok()) return st;
  absl::StatusOr<ChoiceTable> table = ChoiceTable::Tabulate(rule, ground);
  if (!table.ok()) return table.status();
  const ChoiceTable& ch = *table;
  PathIndependenceReport report;
  report.direct.axiom = "path-independence";
  report.consistency.axiom = "consistency";
  report.substitutability.axiom = "substitutability";
  ForEachSubset(ground.All(), [&](StudentSet s) {
    const StudentSet chosen = ch(s);
    ++report.direct.menus_checked;
    ForEachSubset(ground.All(), [&](StudentSet other) {
      if (ch(s | other) != ch(chosen | other)) {
        report.direct.Add({s, chosen, other});
      }
    });
    ++report.consistency.menus_checked;
    ForEachMember(s - chosen, [&](int x) {
      if (ch(s.Without(x)) != chosen) {
        report.consistency.Add({s, chosen, s.Without(x), x});
      }
    });
    ++report.substitutability.menus_checked;
    ForEachMember(chosen, [&](int x) {
      ForEachMember(s.Without(x), [&](int removed) {
        if (!ch(s.Without(removed)).Contains(x)) {
          report.substitutability.Add(
              {s, chosen, s.Without(removed), x, removed});
        }
      });
    });
  });
  return report;
}

absl::StatusOr<TrichotomyReport> CheckTrichotomy(
    const ChoiceRule& alt, const DistributionalPreference& pref,
    const PriorityRanking& pi, int q, const GroundSet& ground,
    const StructuralCertificate& certificate,
    const EnumerationBudget& budget) {
  if (absl::Status st = RequireUniquenessCertificate(certificate, q);
      !st.ok()) {
    return st;
  }
  absl::StatusOr<ChoiceTable> table = ChoiceTable::Tabulate(alt, ground);
  if (!table.ok()) return table.status();
  if (table->capacity() > q) {
    return absl::InvalidArgumentError(
        "size mismatch: the alternative rule's capacity exceeds q");
  }
  TrichotomyReport report;
  absl::Status status;
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    if (!status.ok()) return;
    ++report.menus_checked;
    absl::StatusOr<StudentSet> ours =
        DistributionalChoice(pref, pi, q, menu, budget);
    if (!ours.ok()) {
      status = ours.status();
      return;
    }
    const StudentSet theirs = (*table)(menu);
    if (theirs == *ours) return;
    absl::StatusOr<TrichotomyCase> c =
        Classify(pref, pi, menu, *ours, theirs);
    if (!c.ok()) {
      status = c.status();
      return;
    }
    report.divergences.push_back(*c);
    if (!c->holds()) report.counterexamples.push_back(*c);
  });
  if (!status.ok()) return status;
  return report;
}

absl::StatusOr<ExhaustiveTrichotomyReport> CheckTrichotomyAllRules(
    const DistributionalPreference& pref, const PriorityRanking& pi, int q,
    const GroundSet& ground, const StructuralCertificate& certificate,
    const EnumerationBudget& budget) {
  if (absl::Status st = RequireUniquenessCertificate(certificate, q);
      !st.ok()) {
    return st;
  }
  if (absl::Status st = CheckPairwiseGround(ground); !st.ok()) return st;
  ExhaustiveTrichotomyReport report;
  absl::Status status;
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    if (!status.ok()) return;
    ++report.menus_checked;
    absl::StatusOr<StudentSet> ours =
        DistributionalChoice(pref, pi, q, menu, budget);
    absl::StatusOr<FrontierResult> frontier =
        ComputeFrontier(pref, menu, q, budget);
    if (!ours.ok() || !frontier.ok()) {
      status = !ours.ok() ? ours.status() : frontier.status();
      return;
    }
    ForEachSubset(menu, [&](StudentSet alt) {
      if (!status.ok() || alt.size() > q || alt == *ours) return;
      ++report.alternatives_checked;
      if (std::binary_search(frontier->members.begin(),
                             frontier->members.end(), alt)) {
        ++report.frontier_valued_alternatives;
      }
      absl::StatusOr<TrichotomyCase> c = Classify(pref, pi, menu, *ours, alt);
      if (!c.ok()) {
        status = c.status();
      } else if (!c->holds()) {
        report.counterexamples.push_back(*c);
      }
    });
  });
  if (!status.ok()) return status;
  return report;
}

bool AxiomaticRuleCensus::unique_and_greedy() const {
  for (const MenuCandidates& m : menus) {
    if (m.passing.size() != 1 || m.passing.front() != m.greedy) return false;
  }
  return true;
}

absl::StatusOr<AxiomaticRuleCensus> CensusAxiomaticRules(
    const DistributionalPreference& pref, const PriorityRanking& pi, int q,
    const GroundSet& ground, const EnumerationBudget& budget) {
  if (absl::Status st = CheckPairwiseGround(ground); !st.ok()) return st;
  AxiomaticRuleCensus census;
  census.passing_rules = 1;
  absl::Status status;
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    if (!status.ok()) return;
    MenuCandidates candidates;
    candidates.menu = menu;
    absl::StatusOr<StudentSet> greedy =
        DistributionalChoice(pref, pi, q, menu, budget);
    absl::StatusOr<FrontierResult> frontier =
        ComputeFrontier(pref, menu, q, budget);
    if (!greedy.ok() || !frontier.ok()) {
      status = !greedy.ok() ? greedy.status() : frontier.status();
      return;
    }
    candidates.greedy = *greedy;
    candidates.frontier_size = static_cast<int>(frontier->members.size());
    census.log10_frontier_valued_rules +=
        std::log10(static_cast<double>(candidates.frontier_size));
    ForEachSubset(menu, [&](StudentSet t) {
      if (!status.ok() || !NonWastefulAt(q, menu, t)) return;
      absl::StatusOr<bool> promotes = PromotesAt(pref, menu, t);
      if (!promotes.ok()) {
        status = promotes.status();
        return;
      }
      if (!*promotes) return;
      absl::StatusOr<bool> envy_free = NoJustifiedEnvyAt(pref, pi, menu, t);
      if (!envy_free.ok()) {
        status = envy_free.status();
        return;
      }
      if (*envy_free) candidates.passing.push_back(t);
    });
    census.passing_rules =
        SaturatingMul(census.passing_rules, candidates.passing.size());
    census.menus.push_back(std::move(candidates));
  });
  if (!status.ok()) return status;
  return census;
}

absl::StatusOr<RevealedRelation> BuildRevealedRelation(
    const ChoiceRule& rule, const DistributionalPreference& pref,
    const GroundSet& ground) {
  absl::StatusOr<ChoiceTable> table = ChoiceTable::Tabulate(rule, ground);
  if (!table.ok()) return table.status();
  const int n = ground.size();
  RevealedRelation relation;
  relation.n = n;
  relation.successors.assign(n, StudentSet());
  relation.menus.assign(n, std::vector<StudentSet>(n));
  absl::Status status;
  ForEachSubset(ground.All(), [&](StudentSet menu) {
    if (!status.ok()) return;
    const StudentSet chosen = (*table)(menu);
    ForEachMember(chosen, [&](int s) {
      ForEachMember(menu - chosen, [&](int t) {
        if (!status.ok() || relation.successors[s].Contains(t)) return;
        absl::StatusOr<Comparison> c =
            pref.Compare(chosen.Swap(s, t), chosen);
        if (!c.ok()) {
          status = c.status();
          return;
        }
        if (WeaklyBetter(*c)) {
          relation.successors[s] = relation.successors[s].With(t);
          relation.menus[s][t] = menu;
        }
      });
    });
  });
  if (!status.ok()) return status;
  return relation;
}

absl::StatusOr<RevealResult> RevealPriorities(
    const ChoiceRule& rule, const DistributionalPreference& pref,
    const GroundSet& ground, int q) {
  if (rule.capacity() > q) {
    return absl::InvalidArgumentError(
        "size mismatch: the rule's capacity exceeds q");
  }
  absl::StatusOr<RevealedRelation> relation =
      BuildRevealedRelation(rule, pref, ground);
  if (!relation.ok()) return relation.status();
  const int n = relation->n;
  const std::vector<StudentSet>& next = relation->successors;

  // Shortest cycle: BFS from each student back to itself.
  std::vector<int> best_cycle;
  for (int start = 0; start < n; ++start) {
    std::vector<int> parent(n, -1);
    std::vector<int> dist(n, -1);
    std::deque<int> frontier = {start};
    dist[start] = 0;
    int closing = -1;
    while (!frontier.empty() && closing < 0) {
      const int u = frontier.front();
      frontier.pop_front();
      if (next[u].Contains(start)) {
        closing = u;
        break;
      }
      ForEachMember(next[u], [&](int v) {
        if (dist[v] >= 0) return;
        dist[v] = dist[u] + 1;
        parent[v] = u;
        frontier.push_back(v);
      });
    }
    if (closing < 0) continue;
    if (!best_cycle.empty() &&
        dist[closing] + 1 >= static_cast<int>(best_cycle.size())) {
      continue;
    }
    std::vector<int> cycle;
    for (int v = closing; v != -1; v = parent[v]) cycle.push_back(v);
    std::reverse(cycle.begin(), cycle.end());
    best_cycle = std::move(cycle);
  }
  if (!best_cycle.empty()) {
    CycleWitness witness;
    witness.students = best_cycle;
    for (size_t k = 0; k < best_cycle.size(); ++k) {
      const int from = best_cycle[k];
      const int to = best_cycle[(k + 1) % best_cycle.size()];
      witness.menus.push_back(relation->menus[from][to]);
    }
    return RevealResult(std::move(witness));
  }

  // Kahn's algorithm with the smallest available id first.
  std::vector<int> indegree(n, 0);
  for (int u = 0; u < n; ++u) {
    ForEachMember(next[u], [&](int v) { ++indegree[v]; });
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int u = 0; u < n; ++u) {
    if (indegree[u] == 0) ready.push(u);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    order.push_back(u);
    ForEachMember(next[u], [&](int v) {
      if (--indegree[v] == 0) ready.push(v);
    });
  }
  absl::StatusOr<PriorityRanking> ranking =
      PriorityRanking::Create(std::move(order));
  if (!ranking.ok()) return ranking.status();
  return RevealResult(*std::move(ranking));
}

}  // namespace distchoice
