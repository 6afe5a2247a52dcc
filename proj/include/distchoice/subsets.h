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

// Subset enumeration helpers shared by the exhaustive checkers.

#ifndef DISTCHOICE_SUBSETS_H_
#define DISTCHOICE_SUBSETS_H_

#include <cstdint>
#include <vector>

#include "distchoice/core.h"

namespace distchoice {

// C(n, k), saturating at UINT64_MAX.
uint64_t Binomial(int n, int k);

// Calls fn(T) for every T ⊆ s with |T| == k, in increasing mask order.
// Stops early when fn returns false; returns false iff it stopped early.
template <typename Fn>
bool ForEachSubsetOfSize(StudentSet s, int k, Fn&& fn) {
  const std::vector<int> members = s.Members();
  const int m = static_cast<int>(members.size());
  if (k < 0 || k > m) return true;
  // Colex order over member indices; index->id is monotone, so colex order is
  // increasing mask order.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    uint64_t mask = 0;
    for (int i : idx) mask |= uint64_t{1} << members[i];
    if (!fn(StudentSet(mask))) return false;
    // Smallest i whose index can advance without colliding.
    int i = 0;
    while (i < k && ((i + 1 < k && idx[i] + 1 == idx[i + 1]) ||
                     (i + 1 == k && idx[i] + 1 == m))) {
      ++i;
    }
    if (i == k) return true;
    ++idx[i];
    for (int j = 0; j < i; ++j) idx[j] = j;
  }
}

// All subsets of s of size k, increasing mask order.
std::vector<StudentSet> SubsetsOfSize(StudentSet s, int k);

// Calls fn(T) for every T ⊆ s (including ∅ and s), increasing mask order.
template <typename Fn>
void ForEachSubset(StudentSet s, Fn&& fn) {
  const uint64_t full = s.mask();
  uint64_t t = 0;
  while (true) {
    fn(StudentSet(t));
    if (t == full) return;
    t = (t - full) & full;
  }
}

}  // namespace distchoice

#endif  // DISTCHOICE_SUBSETS_H_
