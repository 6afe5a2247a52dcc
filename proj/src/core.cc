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

#include "distchoice/core.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "distchoice/subsets.h"

namespace distchoice {

std::vector<int> StudentSet::Members() const {
  std::vector<int> out;
  out.reserve(size());
  ForEachMember(*this, [&](int s) { out.push_back(s); });
  return out;
}

absl::StatusOr<GroundSet> GroundSet::Create(int n,
                                            std::vector<std::string> labels) {
  if (n < 1 || n > kMaxStudents) {
    return absl::InvalidArgumentError(
        absl::StrCat("ground set size must be in [1, ", kMaxStudents,
                     "], got ", n));
  }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "expected ", n, " labels, got ", labels.size()));
    }
    std::set<std::string> seen;
    for (const std::string& label : labels) {
      if (!seen.insert(label).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate student label '", label, "'"));
      }
    }
  }
  return GroundSet(n, std::move(labels));
}

std::string GroundSet::Label(int student) const {
  if (labels_.empty()) return absl::StrCat("s", student + 1);
  return labels_[student];
}

int GroundSet::Find(std::string_view label) const {
  for (int i = 0; i < n_; ++i) {
    if (Label(i) == label) return i;
  }
  return -1;
}

std::vector<std::string> GroundSet::Labels(StudentSet s) const {
  std::vector<std::string> out;
  ForEachMember(s, [&](int i) { out.push_back(Label(i)); });
  return out;
}

std::string GroundSet::Format(StudentSet s) const {
  return absl::StrCat("{", absl::StrJoin(Labels(s), ","), "}");
}

PriorityRanking::PriorityRanking(std::vector<int> order)
    : order_(std::move(order)), position_(order_.size()) {
  for (int i = 0; i < static_cast<int>(order_.size()); ++i) {
    position_[order_[i]] = i;
  }
}

absl::StatusOr<PriorityRanking> PriorityRanking::Create(
    std::vector<int> order) {
  const int n = static_cast<int>(order.size());
  if (n < 1 || n > kMaxStudents) {
    return absl::InvalidArgumentError("priority ranking has invalid length");
  }
  std::vector<bool> seen(n, false);
  for (int s : order) {
    if (s < 0 || s >= n || seen[s]) {
      return absl::InvalidArgumentError(
          absl::StrCat("priority ranking is not a permutation of 0..", n - 1));
    }
    seen[s] = true;
  }
  return PriorityRanking(std::move(order));
}

PriorityRanking PriorityRanking::Identity(int n) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return PriorityRanking(std::move(order));
}

std::vector<int> PriorityRanking::Sorted(StudentSet s) const {
  std::vector<int> out = s.Members();
  std::sort(out.begin(), out.end(),
            [this](int a, int b) { return Prefers(a, b); });
  return out;
}

PriorityRanking PriorityRanking::Reversed() const {
  return PriorityRanking(std::vector<int>(order_.rbegin(), order_.rend()));
}

bool PriorityDominates(const PriorityRanking& pi, StudentSet a, StudentSet b) {
  if (a.size() < b.size()) return false;
  const std::vector<int> sa = pi.Sorted(a);
  const std::vector<int> sb = pi.Sorted(b);
  for (size_t k = 0; k < sb.size(); ++k) {
    if (sa[k] != sb[k] && !pi.Prefers(sa[k], sb[k])) return false;
  }
  return true;
}

Comparison Mirror(Comparison c) {
  switch (c) {
    case Comparison::kStrictlyBetter:
      return Comparison::kStrictlyWorse;
    case Comparison::kStrictlyWorse:
      return Comparison::kStrictlyBetter;
    default:
      return c;
  }
}

std::string_view ComparisonName(Comparison c) {
  switch (c) {
    case Comparison::kStrictlyBetter:
      return "StrictlyBetter";
    case Comparison::kStrictlyWorse:
      return "StrictlyWorse";
    case Comparison::kIndifferent:
      return "Indifferent";
    case Comparison::kIncomparable:
      return "Incomparable";
  }
  return "?";
}

absl::StatusOr<Comparison> DistributionalPreference::Compare(
    StudentSet a, StudentSet b) const {
  if (a == b) return Comparison::kIndifferent;
  if (equal_size_only() && a.size() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "size mismatch: ", name(), " compares equal-size sets only (got ",
        a.size(), " and ", b.size(), ")"));
  }
  return CompareSets(a, b);
}

namespace {

void CheckPair(const DistributionalPreference& pref, StudentSet a,
               StudentSet b, Comparison ab, Comparison ba,
               TransitivityReport& report) {
  if (ba != Mirror(ab)) {
    report.violations.push_back(
        {TransitivityViolation::Kind::kAsymmetry, a, b, b});
  }
  if (pref.is_complete() && ab == Comparison::kIncomparable) {
    report.violations.push_back(
        {TransitivityViolation::Kind::kIncompleteness, a, b, b});
  }
}

}  // namespace

absl::StatusOr<TransitivityReport> CheckTransitivity(
    const DistributionalPreference& pref, const GroundSet& ground, int size,
    int64_t budget) {
  if (size < 0 || size > ground.size()) {
    return absl::InvalidArgumentError("set size exceeds the ground set");
  }
  const uint64_t m = Binomial(ground.size(), size);
  TransitivityReport report;
  report.exhaustive =
      m <= (uint64_t{1} << 20) &&
      static_cast<unsigned __int128>(m) * m * m <=
          static_cast<unsigned __int128>(std::max<int64_t>(budget, 0));

  if (report.exhaustive) {
    // Every pairwise verdict is tabulated once.
    const std::vector<StudentSet> sets = SubsetsOfSize(ground.All(), size);
    std::vector<Comparison> table(m * m);
    for (uint64_t i = 0; i < m; ++i) {
      for (uint64_t j = 0; j < m; ++j) {
        absl::StatusOr<Comparison> c = pref.Compare(sets[i], sets[j]);
        if (!c.ok()) return c.status();
        table[i * m + j] = *c;
      }
    }
    for (uint64_t i = 0; i < m; ++i) {
      for (uint64_t j = i; j < m; ++j) {
        CheckPair(pref, sets[i], sets[j], table[i * m + j], table[j * m + i],
                  report);
      }
    }
    for (uint64_t i = 0; i < m; ++i) {
      for (uint64_t j = 0; j < m; ++j) {
        report.triples_checked += m;
        if (!WeaklyBetter(table[i * m + j])) continue;
        for (uint64_t k = 0; k < m; ++k) {
          if (WeaklyBetter(table[j * m + k]) &&
              !WeaklyBetter(table[i * m + k])) {
            report.violations.push_back(
                {TransitivityViolation::Kind::kTransitivity, sets[i], sets[j],
                 sets[k]});
          }
        }
      }
    }
    return report;
  }

  std::mt19937_64 rng(0x5eed);
  std::vector<int> ids(ground.size());
  for (int i = 0; i < ground.size(); ++i) ids[i] = i;
  auto draw = [&] {
    std::shuffle(ids.begin(), ids.end(), rng);
    return StudentSet::FromMembers(
        std::vector<int>(ids.begin(), ids.begin() + size));
  };
  for (int64_t t = 0; t < budget; ++t) {
    const StudentSet a = draw(), b = draw(), c = draw();
    absl::StatusOr<Comparison> ab = pref.Compare(a, b);
    absl::StatusOr<Comparison> ba = pref.Compare(b, a);
    absl::StatusOr<Comparison> bc = pref.Compare(b, c);
    absl::StatusOr<Comparison> ac = pref.Compare(a, c);
    for (const auto* r : {&ab, &ba, &bc, &ac}) {
      if (!r->ok()) return r->status();
    }
    CheckPair(pref, a, b, *ab, *ba, report);
    ++report.triples_checked;
    if (WeaklyBetter(*ab) && WeaklyBetter(*bc) && !WeaklyBetter(*ac)) {
      report.violations.push_back(
          {TransitivityViolation::Kind::kTransitivity, a, b, c});
    }
  }
  return report;
}

uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(r);
}

std::vector<StudentSet> SubsetsOfSize(StudentSet s, int k) {
  std::vector<StudentSet> out;
  ForEachSubsetOfSize(s, k, [&](StudentSet t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace distchoice
