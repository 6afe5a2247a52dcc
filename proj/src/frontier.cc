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

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "distchoice/subsets.h"

namespace distchoice {
namespace {

// Every pairwise verdict among the size-q subsets of the ground set.
class VerdictTable {
 public:
  static absl::StatusOr<VerdictTable> Build(
      const DistributionalPreference& pref, const GroundSet& ground, int q,
      const EnumerationBudget& budget) {
    if (q < 1) return absl::InvalidArgumentError("capacity must be >= 1");
    if (ground.size() > budget.max_checker_ground) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "budget exceeded: exhaustive checks need a ground set of at most ",
          budget.max_checker_ground, " students"));
    }
    const uint64_t m = Binomial(ground.size(), q);
    if (m * m > budget.max_subsets * 64) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "budget exceeded: ", m, " size-", q, " sets to compare pairwise"));
    }
    VerdictTable table;
    table.sets_ = SubsetsOfSize(ground.All(), q);
    table.verdicts_.resize(m * m);
    for (uint64_t i = 0; i < m; ++i) table.index_[table.sets_[i]] = i;
    for (uint64_t i = 0; i < m; ++i) {
      for (uint64_t j = 0; j < m; ++j) {
        absl::StatusOr<Comparison> c =
            pref.Compare(table.sets_[i], table.sets_[j]);
        if (!c.ok()) return c.status();
        table.verdicts_[i * m + j] = *c;
      }
    }
    return table;
  }

  const std::vector<StudentSet>& sets() const { return sets_; }
  Comparison At(StudentSet a, StudentSet b) const {
    return verdicts_[index_.at(a) * sets_.size() + index_.at(b)];
  }

 private:
  std::vector<StudentSet> sets_;
  absl::flat_hash_map<StudentSet, uint64_t> index_;
  std::vector<Comparison> verdicts_;
};

absl::Status CheckEnumerable(StudentSet s, int q,
                             const EnumerationBudget& budget) {
  if (q < 1) return absl::InvalidArgumentError("capacity must be >= 1");
  const uint64_t count = Binomial(s.size(), std::min(q, s.size()));
  if (count > budget.max_subsets) {
    return absl::ResourceExhaustedError(
        absl::StrCat("budget exceeded: NW has ", count,
                     " members, limit is ", budget.max_subsets));
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<StudentSet> NonWastefulSets(StudentSet s, int q) {
  return SubsetsOfSize(s, std::min(q, s.size()));
}

absl::StatusOr<FrontierResult> ComputeFrontier(
    const DistributionalPreference& pref, StudentSet s, int q,
    const EnumerationBudget& budget, FrontierStrategy strategy) {
  if (absl::Status st = CheckEnumerable(s, q, budget); !st.ok()) return st;
  FrontierResult result;
  result.input = s;
  result.target_size = std::min(q, s.size());
  const std::vector<StudentSet> candidates = NonWastefulSets(s, q);
  if (candidates.size() == 1) {
    result.members = candidates;
    return result;
  }

  if (strategy == FrontierStrategy::kAuto && pref.is_complete()) {
    // A complete preorder's frontier is its top indifference class.
    bool consistent = true;
    std::vector<StudentSet> best;
    for (StudentSet t : candidates) {
      if (best.empty()) {
        best.push_back(t);
        continue;
      }
      absl::StatusOr<Comparison> c = pref.Compare(t, best.front());
      if (!c.ok()) return c.status();
      if (*c == Comparison::kStrictlyBetter) {
        best.assign(1, t);
      } else if (*c == Comparison::kIndifferent) {
        best.push_back(t);
      } else if (*c == Comparison::kIncomparable) {
        consistent = false;
        break;
      }
    }
    if (consistent) {
      result.members = std::move(best);
      result.method = FrontierResult::Method::kCompleteFastPath;
      return result;
    }
    // Declared complete but returned Incomparable: fall through to the
    // pairwise filter, which is correct for any preorder.
  }

  for (StudentSet t : candidates) {
    bool dominated = false;
    for (StudentSet u : candidates) {
      if (u == t) continue;
      absl::StatusOr<Comparison> c = pref.Compare(u, t);
      if (!c.ok()) return c.status();
      if (*c == Comparison::kStrictlyBetter) {
        dominated = true;
        break;
      }
    }
    if (!dominated) result.members.push_back(t);
  }
  result.method = FrontierResult::Method::kExhaustive;
  return result;
}

absl::StatusOr<PropertyReport> CheckUpperBoundProperty(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget) {
  absl::StatusOr<VerdictTable> table =
      VerdictTable::Build(pref, ground, q, budget);
  if (!table.ok()) return table.status();
  PropertyReport report;
  report.property = "upper-bound";
  const std::vector<StudentSet>& sets = table->sets();
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      ++report.cases_checked;
      const StudentSet a = sets[i], b = sets[j];
      if (table->At(a, b) != Comparison::kIncomparable) continue;
      ++report.hypotheses_met;
      const bool broken = !ForEachSubsetOfSize(a | b, q, [&](StudentSet t) {
        return !(table->At(t, a) == Comparison::kStrictlyBetter ||
                 table->At(t, b) == Comparison::kStrictlyBetter);
      });
      if (!broken) report.violations.push_back({a, b});
    }
  }
  return report;
}

absl::StatusOr<PropertyReport> CheckMaximizerProperty(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget) {
  absl::StatusOr<VerdictTable> table =
      VerdictTable::Build(pref, ground, q, budget);
  if (!table.ok()) return table.status();
  PropertyReport report;
  report.property = "maximizer";
  const std::vector<StudentSet>& sets = table->sets();
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      ++report.cases_checked;
      const StudentSet a = sets[i], b = sets[j];
      const bool both_maximal =
          ForEachSubsetOfSize(a | b, q, [&](StudentSet t) {
            return WeaklyBetter(table->At(a, t)) &&
                   WeaklyBetter(table->At(b, t));
          });
      if (!both_maximal) continue;
      ++report.hypotheses_met;
      bool exchange = false;
      ForEachMember(a - b, [&](int s) {
        ForEachMember(b - a, [&](int t) {
          if (table->At(a.Swap(s, t), a) == Comparison::kIndifferent &&
              table->At(b.Swap(t, s), b) == Comparison::kIndifferent) {
            exchange = true;
          }
        });
      });
      if (!exchange) report.violations.push_back({a, b});
    }
  }
  return report;
}

absl::StatusOr<PropertyReport> CheckImprovementProperty(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget) {
  absl::StatusOr<VerdictTable> table =
      VerdictTable::Build(pref, ground, q, budget);
  if (!table.ok()) return table.status();
  PropertyReport report;
  report.property = "improvement";
  const std::vector<StudentSet>& sets = table->sets();
  for (StudentSet a : sets) {
    for (StudentSet b : sets) {
      if (a == b) continue;
      ForEachMember(a - b, [&](int s) {
        ++report.cases_checked;
        // (i) a beats every NW(a ∪ b) set without s; (ii) a is weakly above
        // every NW(a ∪ b) set with s.
        const bool hypotheses =
            ForEachSubsetOfSize(a | b, q, [&](StudentSet t) {
              const Comparison c = table->At(a, t);
              return t.Contains(s) ? WeaklyBetter(c)
                                   : c == Comparison::kStrictlyBetter;
            });
        if (!hypotheses) return;
        ++report.hypotheses_met;
        bool improves = false;
        ForEachMember(b - a, [&](int t) {
          if (table->At(b.Swap(t, s), b) == Comparison::kStrictlyBetter) {
            improves = true;
          }
        });
        if (!improves) report.violations.push_back({a, b, s});
      });
    }
  }
  return report;
}

absl::StatusOr<StructuralCertificate> CertifyPreference(
    const DistributionalPreference& pref, const GroundSet& ground, int q,
    const EnumerationBudget& budget) {
  StructuralCertificate cert;
  cert.q = q;
  absl::StatusOr<PropertyReport> ub =
      CheckUpperBoundProperty(pref, ground, q, budget);
  if (!ub.ok()) return ub.status();
  absl::StatusOr<PropertyReport> mx =
      CheckMaximizerProperty(pref, ground, q, budget);
  if (!mx.ok()) return mx.status();
  absl::StatusOr<PropertyReport> im =
      CheckImprovementProperty(pref, ground, q, budget);
  if (!im.ok()) return im.status();
  cert.upper_bound = *std::move(ub);
  cert.maximizer = *std::move(mx);
  cert.improvement = *std::move(im);
  return cert;
}

absl::StatusOr<FrontierStructureReport> CheckFrontierStructure(
    const DistributionalPreference& pref, StudentSet s, int q,
    const StructuralCertificate& certificate,
    const EnumerationBudget& budget) {
  if (!certificate.upper_bound.passed() || certificate.q != q) {
    return absl::FailedPreconditionError(
        "preference not certified: the upper-bound property must pass at "
        "this capacity");
  }
  absl::StatusOr<FrontierResult> frontier =
      ComputeFrontier(pref, s, q, budget);
  if (!frontier.ok()) return frontier.status();
  const std::vector<StudentSet>& members = frontier->members;
  FrontierStructureReport report;
  for (StudentSet a : members) {
    for (StudentSet b : members) {
      absl::StatusOr<Comparison> c = pref.Compare(a, b);
      if (!c.ok()) return c.status();
      if (*c != Comparison::kIndifferent) {
        report.not_indifferent.push_back({a, b});
      }
    }
  }
  for (StudentSet other : NonWastefulSets(s, q)) {
    if (std::binary_search(members.begin(), members.end(), other)) continue;
    for (StudentSet a : members) {
      absl::StatusOr<Comparison> c = pref.Compare(a, other);
      if (!c.ok()) return c.status();
      if (*c != Comparison::kStrictlyBetter) {
        report.not_dominating.push_back({a, other});
      }
    }
  }
  if (certificate.SupportsUniqueness()) {
    report.bases = CheckBaseAxioms(members);
    report.bases_checked = true;
  }
  return report;
}

}  // namespace distchoice
