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

#include "distchoice/preferences.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "distchoice/subsets.h"

namespace distchoice {

Comparison CompareValues(double a, double b, bool exact) {
  if (exact ? a == b : std::abs(a - b) <= kValueTolerance) {
    return Comparison::kIndifferent;
  }
  return a > b ? Comparison::kStrictlyBetter : Comparison::kStrictlyWorse;
}

ValueFunction::ValueFunction(std::vector<double> values)
    : values_(std::move(values)) {
  // 2^47 * 64 students stays below 2^53, so integral sums are exact doubles.
  integral_ = std::all_of(values_.begin(), values_.end(), [](double v) {
    return std::trunc(v) == v && std::abs(v) < std::ldexp(1.0, 47);
  });
}

absl::StatusOr<ValueFunction> ValueFunction::Create(
    std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("value function must be finite");
    }
  }
  return ValueFunction(std::move(values));
}

double ValueFunction::Sum(StudentSet s) const {
  double sum = 0;
  ForEachMember(s, [&](int x) { sum += values_[x]; });
  return sum;
}

absl::StatusOr<Bounds> Bounds::Create(std::vector<int> floors,
                                      std::vector<int> ceilings,
                                      int num_types) {
  if (static_cast<int>(floors.size()) != num_types ||
      static_cast<int>(ceilings.size()) != num_types) {
    return absl::InvalidArgumentError("one floor and ceiling per type");
  }
  for (int t = 0; t < num_types; ++t) {
    if (floors[t] < 0 || ceilings[t] < 0) {
      return absl::InvalidArgumentError("bounds must be non-negative");
    }
    if (floors[t] > ceilings[t]) {
      return absl::InvalidArgumentError(
          absl::StrCat("type ", t, ": floor ", floors[t], " exceeds ceiling ",
                       ceilings[t], " (need r_t ≤ p_t)"));
    }
  }
  return Bounds{std::move(floors), std::move(ceilings)};
}

bool SatisfiesBounds(StudentSet s, const TypeAssignment& tau,
                     const Bounds& bounds) {
  const std::vector<int> counts = tau.Counts(s);
  for (int t = 0; t < tau.num_types; ++t) {
    if (counts[t] < bounds.floors[t] || counts[t] > bounds.ceilings[t]) {
      return false;
    }
  }
  return true;
}

int64_t BoundsError(StudentSet s, const TypeAssignment& tau,
                    const Bounds& bounds, int64_t floor_weight) {
  const std::vector<int> counts = tau.Counts(s);
  int64_t error = 0;
  for (int t = 0; t < tau.num_types; ++t) {
    if (counts[t] < bounds.floors[t]) {
      error -= floor_weight * (bounds.floors[t] - counts[t]);
    } else if (counts[t] > bounds.ceilings[t]) {
      error -= counts[t] - bounds.ceilings[t];
    }
  }
  return error;
}

DiversityIndex DiversityIndex::Log(int num_types, int q) {
  return DiversityIndex(
      num_types, q,
      [](const std::vector<int>& x) {
        double sum = 0;
        for (int c : x) sum += std::log1p(static_cast<double>(c));
        return sum;
      },
      "log");
}

DiversityIndex DiversityIndex::Linear(std::vector<double> coefficients,
                                      int q) {
  const int k = static_cast<int>(coefficients.size());
  return DiversityIndex(
      k, q,
      [c = std::move(coefficients)](const std::vector<int>& x) {
        double sum = 0;
        for (size_t i = 0; i < c.size(); ++i) sum += c[i] * x[i];
        return sum;
      },
      "linear");
}

absl::StatusOr<DiversityIndex> DiversityIndex::Table(
    int num_types, int q, std::map<std::vector<int>, double> values) {
  for (const std::vector<int>& x : CountVectors(num_types, q)) {
    auto it = values.find(x);
    if (it == values.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "diversity table has no entry for counts (", absl::StrJoin(x, ","),
          ")"));
    }
    if (!std::isfinite(it->second)) {
      return absl::InvalidArgumentError(
          "diversity table values must be finite");
    }
  }
  return DiversityIndex(
      num_types, q,
      [v = std::move(values)](const std::vector<int>& x) { return v.at(x); },
      "table");
}

std::vector<std::vector<int>> CountVectors(int num_types, int q) {
  std::vector<std::vector<int>> out;
  if (num_types <= 0) return out;
  std::vector<int> x(num_types, 0);
  std::function<void(int, int)> fill = [&](int pos, int remaining) {
    if (pos == num_types - 1) {
      x[pos] = remaining;
      out.push_back(x);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      x[pos] = c;
      fill(pos + 1, remaining - c);
    }
  };
  fill(0, q);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

class Additive : public DistributionalPreference {
 public:
  explicit Additive(ValueFunction f) : f_(std::move(f)) {}
  bool is_complete() const override { return true; }
  std::string name() const override { return "additive"; }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    return CompareValues(f_.Sum(a), f_.Sum(b), f_.integral());
  }

 private:
  ValueFunction f_;
};

class Pointwise : public DistributionalPreference {
 public:
  explicit Pointwise(ValueFunction f) : f_(std::move(f)) {}
  bool is_complete() const override { return false; }
  bool equal_size_only() const override { return true; }
  std::string name() const override { return "pointwise"; }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    const std::vector<double> va = Profile(a), vb = Profile(b);
    bool a_above = true, b_above = true;
    for (size_t i = 0; i < va.size(); ++i) {
      const Comparison c = CompareValues(va[i], vb[i], f_.integral());
      if (c == Comparison::kStrictlyBetter) b_above = false;
      if (c == Comparison::kStrictlyWorse) a_above = false;
    }
    if (a_above && b_above) return Comparison::kIndifferent;
    if (a_above) return Comparison::kStrictlyBetter;
    if (b_above) return Comparison::kStrictlyWorse;
    return Comparison::kIncomparable;
  }

 private:
  std::vector<double> Profile(StudentSet s) const {
    std::vector<double> v;
    ForEachMember(s, [&](int x) { v.push_back(f_[x]); });
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  }

  ValueFunction f_;
};

class MatroidRank : public DistributionalPreference {
 public:
  explicit MatroidRank(MatroidPtr m) : m_(std::move(m)) {}
  bool is_complete() const override { return true; }
  std::shared_ptr<const MatroidOracle> rank_matroid() const override {
    return m_;
  }
  std::string name() const override {
    return absl::StrCat("matroid-rank(", m_->name(), ")");
  }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    return CompareValues(m_->Rank(a), m_->Rank(b), true);
  }

 private:
  MatroidPtr m_;
};

class Dichotomous : public DistributionalPreference {
 public:
  Dichotomous(TypeAssignment tau, Bounds bounds)
      : tau_(std::move(tau)), bounds_(std::move(bounds)) {}
  bool is_complete() const override { return true; }
  std::string name() const override { return "dichotomous-bounds"; }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    const bool da = SatisfiesBounds(a, tau_, bounds_);
    const bool db = SatisfiesBounds(b, tau_, bounds_);
    if (da == db) return Comparison::kIndifferent;
    return da ? Comparison::kStrictlyBetter : Comparison::kStrictlyWorse;
  }

 private:
  TypeAssignment tau_;
  Bounds bounds_;
};

class SoftBounds : public DistributionalPreference {
 public:
  SoftBounds(TypeAssignment tau, Bounds bounds, int64_t floor_weight)
      : tau_(std::move(tau)),
        bounds_(std::move(bounds)),
        floor_weight_(floor_weight) {}
  bool is_complete() const override { return true; }
  std::string name() const override { return "soft-bounds"; }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    const int64_t ea = BoundsError(a, tau_, bounds_, floor_weight_);
    const int64_t eb = BoundsError(b, tau_, bounds_, floor_weight_);
    if (ea == eb) return Comparison::kIndifferent;
    return ea > eb ? Comparison::kStrictlyBetter : Comparison::kStrictlyWorse;
  }

 private:
  TypeAssignment tau_;
  Bounds bounds_;
  int64_t floor_weight_;
};

class Diversity : public DistributionalPreference {
 public:
  Diversity(TypeAssignment tau, DiversityIndex index)
      : tau_(std::move(tau)), index_(std::move(index)) {}
  bool is_complete() const override { return true; }
  bool equal_size_only() const override { return true; }
  std::string name() const override {
    return absl::StrCat("diversity(", index_.name(), ")");
  }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    if (a.size() != index_.q()) {
      return absl::InvalidArgumentError(
          absl::StrCat("size mismatch: diversity index is calibrated for "
                       "sets of size ",
                       index_.q(), ", got ", a.size()));
    }
    return CompareValues(index_(tau_.Counts(a)), index_(tau_.Counts(b)),
                         false);
  }

 private:
  TypeAssignment tau_;
  DiversityIndex index_;
};

class Custom : public DistributionalPreference {
 public:
  Custom(std::string name, bool complete, bool equal_size,
         std::function<Comparison(StudentSet, StudentSet)> compare)
      : name_(std::move(name)),
        complete_(complete),
        equal_size_(equal_size),
        compare_(std::move(compare)) {}
  bool is_complete() const override { return complete_; }
  bool equal_size_only() const override { return equal_size_; }
  std::string name() const override { return name_; }

 protected:
  absl::StatusOr<Comparison> CompareSets(StudentSet a,
                                         StudentSet b) const override {
    return compare_(a, b);
  }

 private:
  std::string name_;
  bool complete_;
  bool equal_size_;
  std::function<Comparison(StudentSet, StudentSet)> compare_;
};

}  // namespace

PreferencePtr AdditivePreference(ValueFunction f) {
  return std::make_shared<Additive>(std::move(f));
}

PreferencePtr PointwisePreference(ValueFunction f) {
  return std::make_shared<Pointwise>(std::move(f));
}

PreferencePtr MatroidRankPreference(MatroidPtr matroid) {
  return std::make_shared<MatroidRank>(std::move(matroid));
}

PreferencePtr DichotomousBoundsPreference(TypeAssignment tau, Bounds bounds) {
  return std::make_shared<Dichotomous>(std::move(tau), std::move(bounds));
}

PreferencePtr SoftBoundsPreference(TypeAssignment tau, Bounds bounds, int q,
                                   std::optional<int64_t> floor_weight) {
  return std::make_shared<SoftBounds>(std::move(tau), std::move(bounds),
                                      floor_weight.value_or(q + 1));
}

PreferencePtr DiversityPreference(TypeAssignment tau, DiversityIndex index) {
  return std::make_shared<Diversity>(std::move(tau), std::move(index));
}

PreferencePtr CustomPreference(
    std::string name, bool is_complete, bool equal_size_only,
    std::function<Comparison(StudentSet, StudentSet)> compare) {
  return std::make_shared<Custom>(std::move(name), is_complete,
                                  equal_size_only, std::move(compare));
}

absl::StatusOr<SameFrontierReport> CheckSameFrontier(
    const GroundSet& ground, const ValueFunction& f, int q,
    int64_t sample_menus, const EnumerationBudget& budget) {
  if (q < 1 || q > ground.size()) {
    return absl::InvalidArgumentError("need 1 <= q <= n");
  }
  const PreferencePtr additive = AdditivePreference(f);
  const PreferencePtr pointwise = PointwisePreference(f);
  SameFrontierReport report;
  auto check = [&](StudentSet menu) -> absl::Status {
    ++report.menus_checked;
    absl::StatusOr<FrontierResult> fa =
        ComputeFrontier(*additive, menu, q, budget);
    if (!fa.ok()) return fa.status();
    absl::StatusOr<FrontierResult> fp =
        ComputeFrontier(*pointwise, menu, q, budget);
    if (!fp.ok()) return fp.status();
    if (fa->members != fp->members) {
      report.mismatches.push_back({menu, fa->members, fp->members});
    }
    return absl::OkStatus();
  };
  if (ground.size() <= 12) {
    report.exhaustive = true;
    absl::Status status;
    ForEachSubset(ground.All(), [&](StudentSet menu) {
      if (status.ok()) status = check(menu);
    });
    if (!status.ok()) return status;
    return report;
  }
  std::mt19937_64 rng(0x5a3e);
  for (int64_t i = 0; i < sample_menus; ++i) {
    const StudentSet menu(rng() & ground.All().mask());
    if (absl::Status st = check(menu); !st.ok()) return st;
  }
  return report;
}

std::vector<ConcavityFailure> CheckQOrdinalConcavity(
    const DiversityIndex& index) {
  const int k = index.num_types();
  std::vector<ConcavityFailure> failures;
  const std::vector<std::vector<int>> domain = CountVectors(k, index.q());
  auto moved = [](std::vector<int> x, int minus, int plus) {
    --x[minus];
    ++x[plus];
    return x;
  };
  for (const std::vector<int>& xi : domain) {
    for (const std::vector<int>& xt : domain) {
      for (int i = 0; i < k; ++i) {
        if (xi[i] <= xt[i]) continue;
        bool found = false;
        for (int j = 0; j < k && !found; ++j) {
          if (xi[j] >= xt[j]) continue;
          // xi - e_i + e_j and xt + e_i - e_j stay in the domain because
          // xi_i > xt_i >= 0 and xt_j > xi_j >= 0.
          const Comparison left =
              CompareValues(index(moved(xi, i, j)), index(xi), false);
          const Comparison right =
              CompareValues(index(moved(xt, j, i)), index(xt), false);
          found = left == Comparison::kStrictlyBetter ||
                  right == Comparison::kStrictlyBetter ||
                  (left == Comparison::kIndifferent &&
                   right == Comparison::kIndifferent);
        }
        if (!found) failures.push_back({xi, xt, i});
      }
    }
  }
  return failures;
}

}  // namespace distchoice
