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

#include "distchoice/matroid.h"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/rational.hpp"
#include "distchoice/subsets.h"

namespace distchoice {

int MatroidOracle::Rank(StudentSet s) const {
  StudentSet kept;
  ForEachMember(s, [&](int x) {
    if (IsIndependent(kept.With(x))) kept = kept.With(x);
  });
  return kept.size();
}

absl::StatusOr<TypeAssignment> TypeAssignment::Create(std::vector<int> types,
                                                      int num_types) {
  if (num_types < 0) return absl::InvalidArgumentError("negative type count");
  for (int t : types) {
    if (t < 0 || t >= num_types) {
      return absl::InvalidArgumentError(
          absl::StrCat("type index ", t, " out of range [0, ", num_types,
                       ")"));
    }
  }
  return TypeAssignment{std::move(types), num_types};
}

std::vector<int> TypeAssignment::Counts(StudentSet s) const {
  std::vector<int> counts(num_types, 0);
  ForEachMember(s, [&](int x) { ++counts[types[x]]; });
  return counts;
}

namespace {

class Uniform : public MatroidOracle {
 public:
  Uniform(int n, int k) : n_(n), k_(k) {}
  int ground_size() const override { return n_; }
  bool IsIndependent(StudentSet s) const override { return s.size() <= k_; }
  std::string name() const override {
    return absl::StrCat("uniform(", k_, ")");
  }

 private:
  int n_;
  int k_;
};

class Partition : public MatroidOracle {
 public:
  explicit Partition(PartitionMatroidSpec spec) : spec_(std::move(spec)) {}
  int ground_size() const override {
    return static_cast<int>(spec_.tau.types.size());
  }
  bool IsIndependent(StudentSet s) const override {
    const std::vector<int> counts = spec_.tau.Counts(s);
    for (int t = 0; t < spec_.tau.num_types; ++t) {
      if (counts[t] > spec_.capacities[t]) return false;
    }
    return true;
  }
  std::string name() const override { return "partition"; }

 private:
  PartitionMatroidSpec spec_;
};

class Transversal : public MatroidOracle {
 public:
  explicit Transversal(TransversalMatroidSpec spec) : spec_(std::move(spec)) {}
  int ground_size() const override { return spec_.ground_size; }
  bool IsIndependent(StudentSet s) const override {
    return MaximumSlotMatching(spec_, s) == s.size();
  }
  std::string name() const override { return "transversal"; }

 private:
  TransversalMatroidSpec spec_;
};

class Vector : public MatroidOracle {
 public:
  explicit Vector(VectorMatroidSpec spec) : spec_(std::move(spec)) {}
  int ground_size() const override {
    return static_cast<int>(spec_.vectors.size());
  }
  bool IsIndependent(StudentSet s) const override {
    return VectorSpanDimension(spec_, s) == s.size();
  }
  std::string name() const override { return "vector"; }

 private:
  VectorMatroidSpec spec_;
};

// Truncation to m of (M | pool) ∨ U_slack, where slack = m - min(m, r(pool)):
// I is independent iff I ⊆ pool, |I| <= m and |I| - r(I) <= slack.
class Frontier : public MatroidOracle {
 public:
  Frontier(MatroidPtr base, StudentSet pool, int m)
      : base_(std::move(base)), pool_(pool), m_(m) {
    slack_ = m_ - std::min(m_, base_->Rank(pool_));
  }
  int ground_size() const override { return base_->ground_size(); }
  bool IsIndependent(StudentSet s) const override {
    if (!s.IsSubsetOf(pool_) || s.size() > m_) return false;
    return s.size() - base_->Rank(s) <= slack_;
  }
  std::string name() const override {
    return absl::StrCat("frontier(", base_->name(), ")");
  }

 private:
  MatroidPtr base_;
  StudentSet pool_;
  int m_;
  int slack_;
};

bool Augment(int student, const TransversalMatroidSpec& spec,
             std::vector<int>& slot_owner, std::vector<bool>& visited) {
  for (size_t slot = 0; slot < spec.slots.size(); ++slot) {
    if (!spec.slots[slot].Contains(student) || visited[slot]) continue;
    visited[slot] = true;
    if (slot_owner[slot] < 0 ||
        Augment(slot_owner[slot], spec, slot_owner, visited)) {
      slot_owner[slot] = student;
      return true;
    }
  }
  return false;
}

}  // namespace

MatroidPtr UniformMatroid(int ground_size, int k) {
  return std::make_shared<Uniform>(ground_size, k);
}

absl::StatusOr<MatroidPtr> PartitionMatroid(PartitionMatroidSpec spec) {
  if (static_cast<int>(spec.capacities.size()) != spec.tau.num_types) {
    return absl::InvalidArgumentError("one capacity per type is required");
  }
  for (int k : spec.capacities) {
    if (k < 0) return absl::InvalidArgumentError("negative capacity");
  }
  return std::make_shared<Partition>(std::move(spec));
}

int PartitionRank(const PartitionMatroidSpec& spec, StudentSet s) {
  const std::vector<int> counts = spec.tau.Counts(s);
  int r = 0;
  for (int t = 0; t < spec.tau.num_types; ++t) {
    r += std::min(spec.capacities[t], counts[t]);
  }
  return r;
}

absl::StatusOr<MatroidPtr> TransversalMatroid(TransversalMatroidSpec spec) {
  if (spec.ground_size < 1 || spec.ground_size > kMaxStudents) {
    return absl::InvalidArgumentError("invalid ground size");
  }
  for (StudentSet slot : spec.slots) {
    if (!slot.IsSubsetOf(StudentSet::FirstN(spec.ground_size))) {
      return absl::InvalidArgumentError("slot outside the ground set");
    }
  }
  return std::make_shared<Transversal>(std::move(spec));
}

int MaximumSlotMatching(const TransversalMatroidSpec& spec, StudentSet s) {
  std::vector<int> slot_owner(spec.slots.size(), -1);
  int matched = 0;
  ForEachMember(s, [&](int student) {
    std::vector<bool> visited(spec.slots.size(), false);
    if (Augment(student, spec, slot_owner, visited)) ++matched;
  });
  return matched;
}

absl::StatusOr<MatroidPtr> VectorMatroid(VectorMatroidSpec spec) {
  if (spec.vectors.empty() ||
      static_cast<int>(spec.vectors.size()) > kMaxStudents) {
    return absl::InvalidArgumentError("invalid ground size");
  }
  const size_t k = spec.vectors.front().size();
  for (const std::vector<int>& v : spec.vectors) {
    if (v.size() != k) {
      return absl::InvalidArgumentError("attribute vectors differ in length");
    }
    for (int x : v) {
      if (x != 0 && x != 1) {
        return absl::InvalidArgumentError("attribute vectors must be 0/1");
      }
    }
  }
  return std::make_shared<Vector>(std::move(spec));
}

int VectorSpanDimension(const VectorMatroidSpec& spec, StudentSet s) {
  using Q = boost::rational<int64_t>;
  std::vector<std::vector<Q>> rows;
  ForEachMember(s, [&](int x) {
    rows.emplace_back(spec.vectors[x].begin(), spec.vectors[x].end());
  });
  if (rows.empty()) return 0;
  const size_t cols = rows.front().size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].numerator() == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].numerator() == 0) continue;
      const Q factor = rows[r][col] / rows[rank][col];
      for (size_t c = col; c < cols; ++c) {
        rows[r][c] -= factor * rows[rank][c];
      }
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

MatroidPtr FrontierMatroid(MatroidPtr base, StudentSet pool, int m) {
  return std::make_shared<Frontier>(std::move(base), pool, m);
}

StudentSet GreedyBasis(const MatroidOracle& oracle, StudentSet pool,
                       const PriorityRanking& pi) {
  StudentSet kept;
  for (int s : pi.Sorted(pool)) {
    if (oracle.IsIndependent(kept.With(s))) kept = kept.With(s);
  }
  return kept;
}

BaseAxiomReport CheckBaseAxioms(const std::vector<StudentSet>& bases) {
  BaseAxiomReport report;
  if (bases.empty()) {
    report.violations.push_back(
        {BaseAxiomViolation::Kind::kEmpty, StudentSet(), StudentSet()});
    return report;
  }
  const absl::flat_hash_set<StudentSet> family(bases.begin(), bases.end());
  for (StudentSet b : bases) {
    if (b.size() != bases.front().size()) {
      report.violations.push_back(
          {BaseAxiomViolation::Kind::kCardinality, bases.front(), b});
    }
  }
  for (StudentSet first : bases) {
    for (StudentSet second : bases) {
      if (first == second) continue;
      ForEachMember(first - second, [&](int s) {
        bool exchange = false;
        bool strong = false;
        ForEachMember(second - first, [&](int t) {
          if (family.contains(first.Swap(s, t))) {
            exchange = true;
            if (family.contains(second.Swap(t, s))) strong = true;
          }
        });
        if (!exchange) {
          report.violations.push_back(
              {BaseAxiomViolation::Kind::kExchange, first, second, s});
        }
        if (!strong) {
          report.violations.push_back(
              {BaseAxiomViolation::Kind::kStrongExchange, first, second, s});
        }
      });
    }
  }
  return report;
}

std::vector<MatroidAxiomViolation> CheckMatroidAxioms(
    const MatroidOracle& oracle) {
  std::vector<MatroidAxiomViolation> out;
  const int n = oracle.ground_size();
  const uint64_t total = uint64_t{1} << n;
  std::vector<bool> indep(total);
  std::vector<int> rank(total);
  for (uint64_t m = 0; m < total; ++m) {
    indep[m] = oracle.IsIndependent(StudentSet(m));
    rank[m] = oracle.Rank(StudentSet(m));
  }
  if (!indep[0]) out.push_back({"I1: empty set independent", {}, {}});
  for (uint64_t a = 0; a < total; ++a) {
    const StudentSet sa(a);
    if (rank[a] < 0 || rank[a] > sa.size()) {
      out.push_back({"R1: cardinality bound", sa, sa});
    }
    if (indep[a]) {
      ForEachMember(sa, [&](int x) {
        if (!indep[sa.Without(x).mask()]) {
          out.push_back({"I2: downward closure", sa, sa.Without(x)});
        }
      });
    }
    for (uint64_t b = 0; b < total; ++b) {
      const StudentSet sb(b);
      if (indep[a] && indep[b] && sa.size() < sb.size()) {
        bool augmentable = false;
        ForEachMember(sb - sa, [&](int x) {
          if (indep[sa.With(x).mask()]) augmentable = true;
        });
        if (!augmentable) out.push_back({"I3: augmentation", sa, sb});
      }
      if (sa.IsSubsetOf(sb) && rank[a] > rank[b]) {
        out.push_back({"R2: monotonicity", sa, sb});
      }
      if (rank[(sa | sb).mask()] + rank[(sa & sb).mask()] > rank[a] + rank[b]) {
        out.push_back({"R3: submodularity", sa, sb});
      }
    }
  }
  return out;
}

std::vector<StudentSet> Bases(const MatroidOracle& oracle) {
  const StudentSet all = StudentSet::FirstN(oracle.ground_size());
  std::vector<StudentSet> out;
  ForEachSubsetOfSize(all, oracle.Rank(all), [&](StudentSet s) {
    if (oracle.IsIndependent(s)) out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace distchoice
