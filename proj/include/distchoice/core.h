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

#ifndef DISTCHOICE_CORE_H_
#define DISTCHOICE_CORE_H_

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace distchoice {

inline constexpr int kMaxStudents = 64;

// A subset of the ground set, one bit per student. Ground sets never exceed
// kMaxStudents, so all set algebra is a handful of word operations.
class StudentSet {
 public:
  constexpr StudentSet() = default;
  constexpr explicit StudentSet(uint64_t mask) : mask_(mask) {}

  static StudentSet Of(std::initializer_list<int> students) {
    StudentSet s;
    for (int student : students) s = s.With(student);
    return s;
  }
  static StudentSet FromMembers(const std::vector<int>& students) {
    StudentSet s;
    for (int student : students) s = s.With(student);
    return s;
  }
  // {0, ..., n-1}.
  static constexpr StudentSet FirstN(int n) {
    return StudentSet(n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
  }

  constexpr uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool Contains(int student) const {
    return (mask_ >> student) & uint64_t{1};
  }
  constexpr bool IsSubsetOf(StudentSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  constexpr StudentSet With(int student) const {
    return StudentSet(mask_ | (uint64_t{1} << student));
  }
  constexpr StudentSet Without(int student) const {
    return StudentSet(mask_ & ~(uint64_t{1} << student));
  }
  // (this \ {out}) ∪ {in}.
  constexpr StudentSet Swap(int out, int in) const {
    return Without(out).With(in);
  }

  constexpr StudentSet operator|(StudentSet o) const {
    return StudentSet(mask_ | o.mask_);
  }
  constexpr StudentSet operator&(StudentSet o) const {
    return StudentSet(mask_ & o.mask_);
  }
  constexpr StudentSet operator-(StudentSet o) const {
    return StudentSet(mask_ & ~o.mask_);
  }

  // Members in ascending id order.
  std::vector<int> Members() const;

  friend constexpr bool operator==(StudentSet, StudentSet) = default;
  friend constexpr auto operator<=>(StudentSet a, StudentSet b) {
    return a.mask_ <=> b.mask_;
  }

  template <typename H>
  friend H AbslHashValue(H h, StudentSet s) {
    return H::combine(std::move(h), s.mask_);
  }

 private:
  uint64_t mask_ = 0;
};

// Calls fn(student) for every member in ascending id order.
template <typename Fn>
void ForEachMember(StudentSet s, Fn&& fn) {
  for (uint64_t m = s.mask(); m != 0; m &= m - 1) fn(std::countr_zero(m));
}

// The finite universe of students, optionally labelled.
class GroundSet {
 public:
  // Fails unless 1 <= n <= kMaxStudents and labels (when given) are n
  // distinct strings.
  static absl::StatusOr<GroundSet> Create(int n,
                                          std::vector<std::string> labels = {});

  int size() const { return n_; }
  StudentSet All() const { return StudentSet::FirstN(n_); }
  bool has_labels() const { return !labels_.empty(); }
  // The label, or "s<id+1>" when the ground set is unlabelled.
  std::string Label(int student) const;
  // Returns -1 when no student carries this label.
  int Find(std::string_view label) const;
  // "{s1,s4,s5}".
  std::string Format(StudentSet s) const;
  std::vector<std::string> Labels(StudentSet s) const;

 private:
  GroundSet(int n, std::vector<std::string> labels)
      : n_(n), labels_(std::move(labels)) {}

  int n_;
  std::vector<std::string> labels_;
};

// A strict linear order over the ground set, highest priority first.
class PriorityRanking {
 public:
  // Fails unless `order` is a permutation of {0, ..., n-1}.
  static absl::StatusOr<PriorityRanking> Create(std::vector<int> order);
  // 0 before 1 before 2 ...
  static PriorityRanking Identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  // 0 is the highest priority.
  int Position(int student) const { return position_[student]; }
  // True iff a has strictly higher priority than b.
  bool Prefers(int a, int b) const { return position_[a] < position_[b]; }
  // Members of s, highest priority first.
  std::vector<int> Sorted(StudentSet s) const;
  PriorityRanking Reversed() const;

  friend bool operator==(const PriorityRanking& a, const PriorityRanking& b) {
    return a.order_ == b.order_;
  }

 private:
  explicit PriorityRanking(std::vector<int> order);

  std::vector<int> order_;
  std::vector<int> position_;
};

// Rank-by-rank comparison: a dominates b iff |a| >= |b| and, for every
// k <= |b|, the k-th best member of a is the k-th best member of b or has
// higher priority.
bool PriorityDominates(const PriorityRanking& pi, StudentSet a, StudentSet b);

enum class Comparison : uint8_t {
  kStrictlyBetter,
  kStrictlyWorse,
  kIndifferent,
  kIncomparable,
};

// Verdict of compare(b, a) given compare(a, b).
Comparison Mirror(Comparison c);
std::string_view ComparisonName(Comparison c);
// a ≿ b.
inline bool WeaklyBetter(Comparison c) {
  return c == Comparison::kStrictlyBetter || c == Comparison::kIndifferent;
}

class MatroidOracle;

// A preorder over sets of students. Implementations must be pure functions of
// their arguments; they are shared across threads.
class DistributionalPreference {
 public:
  virtual ~DistributionalPreference() = default;

  // Validates sizes and short-circuits identical arguments, then defers to
  // CompareSets. InvalidArgument (size mismatch) when equal_size_only() and
  // |a| != |b|.
  absl::StatusOr<Comparison> Compare(StudentSet a, StudentSet b) const;

  // Declared capabilities. is_complete promises Incomparable is never
  // returned; transitivity and completeness are verified by
  // CheckTransitivity, not trusted.
  virtual bool is_complete() const = 0;
  virtual bool equal_size_only() const { return false; }
  // Non-null when the preference is "r(a) >= r(b)" for this matroid. Enables
  // the greedy fast path in DistributionalChoice.
  virtual std::shared_ptr<const MatroidOracle> rank_matroid() const {
    return nullptr;
  }
  virtual std::string name() const = 0;

 protected:
  // Only called with a != b and, for equal_size_only preferences, |a| == |b|.
  virtual absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                                 StudentSet b) const = 0;
};

using PreferencePtr = std::shared_ptr<const DistributionalPreference>;

struct TransitivityViolation {
  enum class Kind {
    // compare(a, b) and compare(b, a) are not mirror verdicts.
    kAsymmetry,
    // a ≿ b and b ≿ c but not a ≿ c.
    kTransitivity,
    // Incomparable returned by a preference declared complete.
    kIncompleteness,
  };
  Kind kind;
  StudentSet a, b, c;
};

struct TransitivityReport {
  bool exhaustive = false;
  int64_t triples_checked = 0;
  std::vector<TransitivityViolation> violations;
  bool passed() const { return violations.empty(); }
};

// Checks the preorder contract on sets of the given size: every ordered
// triple when C(n, size)^3 <= budget, otherwise `budget` random triples drawn
// with a fixed seed.
absl::StatusOr<TransitivityReport> CheckTransitivity(
    const DistributionalPreference& pref, const GroundSet& ground, int size,
    int64_t budget);

}  // namespace distchoice

#endif  // DISTCHOICE_CORE_H_
