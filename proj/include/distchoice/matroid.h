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

#ifndef DISTCHOICE_MATROID_H_
#define DISTCHOICE_MATROID_H_

#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "distchoice/core.h"

namespace distchoice {

// Independence oracle over {0, ..., ground_size()-1}. Oracles are immutable
// and safe to query concurrently.
class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;

  virtual int ground_size() const = 0;
  virtual bool IsIndependent(StudentSet s) const = 0;
  virtual std::string name() const = 0;

  // Size of the largest independent subset of s, found by the greedy scan
  // (correct for any matroid by the exchange property).
  int Rank(StudentSet s) const;
};

using MatroidPtr = std::shared_ptr<const MatroidOracle>;

// Type assignment shared by partition matroids and the bounds preferences:
// student i has type types[i] in [0, num_types).
struct TypeAssignment {
  std::vector<int> types;
  int num_types = 0;

  // Fails when a type index is out of range.
  static absl::StatusOr<TypeAssignment> Create(std::vector<int> types,
                                               int num_types);
  // Per-type counts of the members of s.
  std::vector<int> Counts(StudentSet s) const;
};

struct PartitionMatroidSpec {
  TypeAssignment tau;
  std::vector<int> capacities;  // one per type, >= 0
};

struct TransversalMatroidSpec {
  int ground_size = 0;
  std::vector<StudentSet> slots;  // eligibility set of each reserve slot
};

struct VectorMatroidSpec {
  // One 0/1 attribute vector per student, all of equal length.
  std::vector<std::vector<int>> vectors;
};

// At most k students.
MatroidPtr UniformMatroid(int ground_size, int k);

// Independent iff every type count is within its capacity. The closed-form
// rank is sum_i min{k_i, |S_i|}.
absl::StatusOr<MatroidPtr> PartitionMatroid(PartitionMatroidSpec spec);
int PartitionRank(const PartitionMatroidSpec& spec, StudentSet s);

// Independent iff the students can be matched injectively to slots they are
// eligible for (augmenting-path bipartite matching).
absl::StatusOr<MatroidPtr> TransversalMatroid(TransversalMatroidSpec spec);
// Size of a maximum matching between s and the slots.
int MaximumSlotMatching(const TransversalMatroidSpec& spec, StudentSet s);

// Linear independence over the rationals, by exact Gaussian elimination.
absl::StatusOr<MatroidPtr> VectorMatroid(VectorMatroidSpec spec);
// dim span{vectors[s] : s in S}.
int VectorSpanDimension(const VectorMatroidSpec& spec, StudentSet s);

// The matroid whose bases are the size-m subsets T of `pool` with
// r(T) = min{m, r(pool)}. Used by the choice rule's greedy fast path.
MatroidPtr FrontierMatroid(MatroidPtr base, StudentSet pool, int m);

// Scans pool in priority order and keeps each student whose addition keeps
// the kept set independent.
StudentSet GreedyBasis(const MatroidOracle& oracle, StudentSet pool,
                       const PriorityRanking& pi);

struct BaseAxiomViolation {
  enum class Kind {
    kEmpty,             // B1: no bases
    kCardinality,       // bases of different sizes
    kExchange,          // B2
    kStrongExchange,    // symmetric exchange
  };
  Kind kind;
  StudentSet first;
  StudentSet second;
  int student = -1;  // the s in S \ S' that has no exchange partner
};

struct BaseAxiomReport {
  std::vector<BaseAxiomViolation> violations;
  bool passed() const { return violations.empty(); }
};

// Checks B1, equal cardinality, B2 and strong exchange on a candidate base
// family.
BaseAxiomReport CheckBaseAxioms(const std::vector<StudentSet>& bases);

struct MatroidAxiomViolation {
  std::string axiom;
  StudentSet first;
  StudentSet second;
};

// Independence axioms (I1-I3) and rank axioms (R1-R3), exhaustively over the
// ground set. Intended for ground sets of at most ~10 students.
std::vector<MatroidAxiomViolation> CheckMatroidAxioms(
    const MatroidOracle& oracle);

// All maximum-rank subsets of the ground set.
std::vector<StudentSet> Bases(const MatroidOracle& oracle);

}  // namespace distchoice

#endif  // DISTCHOICE_MATROID_H_
