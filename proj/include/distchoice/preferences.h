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

// Concrete distributional-preference families: additive and pointwise value
// functions, matroid rank, dichotomous and soft floors/ceilings, and
// type-count diversity indices.

#ifndef DISTCHOICE_PREFERENCES_H_
#define DISTCHOICE_PREFERENCES_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "distchoice/core.h"
#include "distchoice/frontier.h"
#include "distchoice/matroid.h"

namespace distchoice {

// Absolute tolerance for real-valued ties when inputs are not integral.
inline constexpr double kValueTolerance = 1e-9;

// Real-valued scalar comparison: exact when `exact`, otherwise values within
// kValueTolerance are Indifferent.
Comparison CompareValues(double a, double b, bool exact);

// One real value per student.
class ValueFunction {
 public:
  // Fails on non-finite values.
  static absl::StatusOr<ValueFunction> Create(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int student) const { return values_[student]; }
  const std::vector<double>& values() const { return values_; }
  // All values are integers small enough that every subset sum is exact.
  bool integral() const { return integral_; }
  double Sum(StudentSet s) const;

 private:
  explicit ValueFunction(std::vector<double> values);

  std::vector<double> values_;
  bool integral_ = false;
};

// Per-type floors and ceilings.
struct Bounds {
  std::vector<int> floors;
  std::vector<int> ceilings;

  // Fails unless both vectors have num_types entries, all non-negative, with
  // floor <= ceiling for every type.
  static absl::StatusOr<Bounds> Create(std::vector<int> floors,
                                       std::vector<int> ceilings,
                                       int num_types);
};

// Every type count of s is within [floor, ceiling].
bool SatisfiesBounds(StudentSet s, const TypeAssignment& tau,
                     const Bounds& bounds);

// Sum of per-type penalties: -w * (floor - count) below the floor, 0 within
// bounds, -(count - ceiling) above the ceiling.
int64_t BoundsError(StudentSet s, const TypeAssignment& tau,
                    const Bounds& bounds, int64_t floor_weight);

// A diversity index f over type-count vectors with total q.
class DiversityIndex {
 public:
  using Fn = std::function<double(const std::vector<int>&)>;

  DiversityIndex(int num_types, int q, Fn fn, std::string name)
      : num_types_(num_types), q_(q), fn_(std::move(fn)),
        name_(std::move(name)) {}

  // sum_i log(1 + x_i).
  static DiversityIndex Log(int num_types, int q);
  // sum_i c_i x_i.
  static DiversityIndex Linear(std::vector<double> coefficients, int q);
  // Explicit values; fails unless every count vector with total q appears.
  static absl::StatusOr<DiversityIndex> Table(
      int num_types, int q, std::map<std::vector<int>, double> values);

  int num_types() const { return num_types_; }
  int q() const { return q_; }
  const std::string& name() const { return name_; }
  double operator()(const std::vector<int>& counts) const {
    return fn_(counts);
  }

 private:
  int num_types_;
  int q_;
  Fn fn_;
  std::string name_;
};

// All x in Z_+^k with sum q, in lexicographic order.
std::vector<std::vector<int>> CountVectors(int num_types, int q);

// Sum of f over the set; complete.
PreferencePtr AdditivePreference(ValueFunction f);

// Rank-wise domination of the descending value profiles; equal-size sets
// only, Incomparable when neither profile dominates.
PreferencePtr PointwisePreference(ValueFunction f);

// r(a) >= r(b); complete. Declares the matroid for the choice fast path.
PreferencePtr MatroidRankPreference(MatroidPtr matroid);

// Two indifference classes: sets satisfying the bounds above the rest.
PreferencePtr DichotomousBoundsPreference(TypeAssignment tau, Bounds bounds);

// Larger BoundsError is better. The floor weight defaults to q + 1, enough
// for a single missing floor unit to outweigh every ceiling penalty a size-q
// set can incur.
PreferencePtr SoftBoundsPreference(TypeAssignment tau, Bounds bounds, int q,
                                   std::optional<int64_t> floor_weight = {});

// f(n(a)) >= f(n(b)) on sets of size index.q(); complete.
PreferencePtr DiversityPreference(TypeAssignment tau, DiversityIndex index);

// Wraps an arbitrary comparator. Used for planted counterexamples.
PreferencePtr CustomPreference(
    std::string name, bool is_complete, bool equal_size_only,
    std::function<Comparison(StudentSet, StudentSet)> compare);

struct FrontierMismatch {
  StudentSet menu;
  std::vector<StudentSet> additive;
  std::vector<StudentSet> pointwise;
};

struct SameFrontierReport {
  bool exhaustive = false;
  int64_t menus_checked = 0;
  std::vector<FrontierMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

// Compares additive and pointwise frontiers built from the same f on every
// menu when n <= 12, otherwise on `sample_menus` random menus.
absl::StatusOr<SameFrontierReport> CheckSameFrontier(
    const GroundSet& ground, const ValueFunction& f, int q,
    int64_t sample_menus = 4096, const EnumerationBudget& budget = {});

struct ConcavityFailure {
  std::vector<int> xi;
  std::vector<int> xi_tilde;
  int i = 0;
};

// Checks q-ordinal concavity on every pair of count vectors with total q.
std::vector<ConcavityFailure> CheckQOrdinalConcavity(
    const DiversityIndex& index);

}  // namespace distchoice

#endif  // DISTCHOICE_PREFERENCES_H_
