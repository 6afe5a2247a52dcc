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

// Instance files (JSON, schema version 1): students, types, schools with one
// preference family each, and optional student preference lists.

#ifndef DISTCHOICE_INSTANCE_H_
#define DISTCHOICE_INSTANCE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "distchoice/choice.h"
#include "distchoice/core.h"
#include "distchoice/matroid.h"
#include "distchoice/mechanism.h"

namespace distchoice {

struct InstanceError {
  enum class Kind {
    kSchema,     // malformed document, unknown version or field
    kReference,  // a label, type or school name that does not resolve
    kDomain,     // a value outside its domain
  };
  Kind kind;
  // JSON path of the offending node, e.g. "schools[0].capacity".
  std::string path;
  std::string message;

  // "DomainError at schools[0]: ...".
  std::string ToString() const;
};

struct SchoolSpec {
  School school;
  std::string family;
  // Set for the matroid-rank family.
  MatroidPtr matroid;
  // An explicit choice rule, one chosen set per menu.
  std::optional<ChoiceTable> choice_table;
};

struct Instance {
  GroundSet ground;
  std::vector<std::string> type_names;
  std::optional<TypeAssignment> tau;
  std::vector<SchoolSpec> schools;
  std::optional<std::vector<StudentPreference>> student_preferences;

  // Returns -1 when no school has this name.
  int FindSchool(std::string_view name) const;
  // FailedPrecondition when the file has no student preferences.
  absl::StatusOr<Market> BuildMarket() const;
};

// InvalidArgument listing every validation error, one per line. When
// `errors` is non-null it receives the structured list.
absl::StatusOr<Instance> ParseInstance(
    std::string_view text, std::vector<InstanceError>* errors = nullptr);

absl::StatusOr<Instance> LoadInstance(
    const std::string& path, std::vector<InstanceError>* errors = nullptr);

// "all", "none", or comma-separated student labels.
absl::StatusOr<StudentSet> ParseStudentList(const GroundSet& ground,
                                            std::string_view text);

}  // namespace distchoice

#endif  // DISTCHOICE_INSTANCE_H_
