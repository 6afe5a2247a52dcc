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

// Shared instances and brute-force oracles for the tests. The oracles use
// only DistributionalPreference::Compare and plain loops, never the library's
// frontier or choice code.

#ifndef DISTCHOICE_TESTS_FIXTURES_H_
#define DISTCHOICE_TESTS_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distchoice/core.h"
#include "distchoice/matroid.h"
#include "distchoice/preferences.h"

namespace distchoice::testing {

// Five students s1..s5: s1, s2, s3 have type t' (index 1), s4, s5 have type
// t (index 0). Capacity 3; floor 2 and ceiling 3 for t, floor 0 and ceiling
// 3 for t'. Priority s1 > s2 > s3 > s4 > s5.
struct FloorsCeilingsInstance {
  GroundSet ground = *GroundSet::Create(5, {"s1", "s2", "s3", "s4", "s5"});
  TypeAssignment tau = *TypeAssignment::Create({1, 1, 1, 0, 0}, 2);
  Bounds bounds = *Bounds::Create({2, 0}, {3, 3}, 2);
  PriorityRanking pi = PriorityRanking::Identity(5);
  int q = 3;

  PreferencePtr Dichotomous() const {
    return DichotomousBoundsPreference(tau, bounds);
  }
  PreferencePtr Soft() const { return SoftBoundsPreference(tau, bounds, q); }
  StudentSet Set(std::initializer_list<int> labels_one_based) const {
    StudentSet s;
    for (int i : labels_one_based) s = s.With(i - 1);
    return s;
  }
};

inline std::vector<StudentSet> AllSubsetsOracle(int n) {
  std::vector<StudentSet> out;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) out.emplace_back(m);
  return out;
}

inline std::vector<StudentSet> SubsetsOfSizeOracle(StudentSet s, int k) {
  std::vector<StudentSet> out;
  // Submask walk, independent of the library's colex generator.
  for (uint64_t t = s.mask();; t = (t - 1) & s.mask()) {
    if (StudentSet(t).size() == k) out.emplace_back(t);
    if (t == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Undominated members of NW(S) by pairwise Compare.
inline std::vector<StudentSet> FrontierOracle(
    const DistributionalPreference& pref, StudentSet s, int q) {
  const std::vector<StudentSet> nw =
      SubsetsOfSizeOracle(s, std::min(q, s.size()));
  std::vector<StudentSet> out;
  for (StudentSet a : nw) {
    bool dominated = false;
    for (StudentSet b : nw) {
      if (*pref.Compare(b, a) == Comparison::kStrictlyBetter) dominated = true;
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

// The frontier member with the lexicographically best membership vector read
// in priority order. This is what the greedy scan builds, stated without the
// scan.
inline StudentSet LexBestOracle(const std::vector<StudentSet>& members,
                                const PriorityRanking& pi) {
  auto key = [&](StudentSet t) {
    std::vector<int> v;
    for (int s : pi.order()) v.push_back(t.Contains(s) ? 0 : 1);
    return v;
  };
  StudentSet best = members.front();
  for (StudentSet t : members) {
    if (key(t) < key(best)) best = t;
  }
  return best;
}

inline StudentSet ChoiceOracle(const DistributionalPreference& pref,
                               const PriorityRanking& pi, int q,
                               StudentSet s) {
  return LexBestOracle(FrontierOracle(pref, s, q), pi);
}

// Brute-force matroid rank: the largest independent subset.
inline int RankOracle(const MatroidOracle& m, StudentSet s) {
  int best = 0;
  for (uint64_t t = s.mask();; t = (t - 1) & s.mask()) {
    if (m.IsIndependent(StudentSet(t))) {
      best = std::max(best, StudentSet(t).size());
    }
    if (t == 0) break;
  }
  return best;
}

inline PriorityRanking RandomRanking(int n, std::mt19937_64& rng) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return *PriorityRanking::Create(order);
}

inline ValueFunction RandomInjectiveValues(int n, std::mt19937_64& rng) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  std::shuffle(v.begin(), v.end(), rng);
  return *ValueFunction::Create(v);
}

inline ValueFunction RandomSmallValues(int n, int max_value,
                                       std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, max_value);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return *ValueFunction::Create(v);
}

inline TypeAssignment RandomTypes(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> t(n);
  for (int& x : t) x = d(rng);
  return *TypeAssignment::Create(t, k);
}

inline PreferencePtr ConstantIndifferent() {
  return CustomPreference("constant", true, false,
                          [](StudentSet, StudentSet) {
                            return Comparison::kIndifferent;
                          });
}

}  // namespace distchoice::testing

#endif  // DISTCHOICE_TESTS_FIXTURES_H_
