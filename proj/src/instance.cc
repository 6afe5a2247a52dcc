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

#include "distchoice/instance.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "distchoice/preferences.h"
#include "json.hpp"

namespace distchoice {
namespace {

using json = nlohmann::json;
using Kind = InstanceError::Kind;

constexpr int kMaxTableGround = 12;

std::string KindName(Kind kind) {
  switch (kind) {
    case Kind::kSchema:
      return "SchemaError";
    case Kind::kReference:
      return "ReferenceError";
    case Kind::kDomain:
      return "DomainError";
  }
  return "Error";
}

std::string Quote(const json& j) { return j.dump(); }

// Walks the document, recording every error and returning nullopt for
// unusable nodes so that parsing continues past the first failure.
class Parser {
 public:
  std::vector<InstanceError> errors;

  void Error(Kind kind, const std::string& path, std::string message) {
    errors.push_back({kind, path, std::move(message)});
  }

  // Object with every required key. Unknown keys are reported but do not stop
  // parsing, so later errors are still collected.
  bool Object(const json& j, const std::string& path,
              std::initializer_list<const char*> required,
              std::initializer_list<const char*> optional) {
    if (!j.is_object()) {
      Error(Kind::kSchema, path, "expected an object");
      return false;
    }
    bool ok = true;
    for (const char* key : required) {
      if (!j.contains(key)) {
        Error(Kind::kSchema, path, absl::StrCat("missing field \"", key, "\""));
        ok = false;
      }
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* k : required) known = known || key == k;
      for (const char* k : optional) known = known || key == k;
      if (!known) {
        Error(Kind::kSchema, path, absl::StrCat("unknown field \"", key, "\""));
      }
    }
    return ok;
  }

  std::optional<int64_t> Int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      Error(Kind::kSchema, path, "expected an integer");
      return std::nullopt;
    }
    return j.get<int64_t>();
  }

  std::optional<double> Number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      Error(Kind::kSchema, path, "expected a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<std::string> String(const json& j, const std::string& path) {
    if (!j.is_string()) {
      Error(Kind::kSchema, path, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  const json* Array(const json& j, const std::string& path) {
    if (!j.is_array()) {
      Error(Kind::kSchema, path, "expected an array");
      return nullptr;
    }
    return &j;
  }

  std::optional<int> Student(const GroundSet& ground, const json& j,
                             const std::string& path) {
    std::optional<std::string> label = String(j, path);
    if (!label) return std::nullopt;
    const int s = ground.Find(*label);
    if (s < 0) {
      Error(Kind::kReference, path, absl::StrCat("unknown student ", *label));
      return std::nullopt;
    }
    return s;
  }

  std::optional<StudentSet> Students(const GroundSet& ground, const json& j,
                                     const std::string& path) {
    if (!Array(j, path)) return std::nullopt;
    StudentSet out;
    bool ok = true;
    for (size_t k = 0; k < j.size(); ++k) {
      const std::string p = absl::StrCat(path, "[", k, "]");
      std::optional<int> s = Student(ground, j[k], p);
      if (!s) {
        ok = false;
      } else if (out.Contains(*s)) {
        Error(Kind::kDomain, p,
              absl::StrCat("student ", ground.Label(*s), " listed twice"));
        ok = false;
      } else {
        out = out.With(*s);
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<int> TypeIndex(const std::vector<std::string>& names,
                               const std::string& name,
                               const std::string& path) {
    for (size_t t = 0; t < names.size(); ++t) {
      if (names[t] == name) return static_cast<int>(t);
    }
    Error(Kind::kReference, path, absl::StrCat("unknown type ", name));
    return std::nullopt;
  }

  // {"<label>": value} covering every student exactly once.
  template <typename T, typename Fn>
  std::optional<std::vector<T>> PerStudent(const GroundSet& ground,
                                           const json& j,
                                           const std::string& path, Fn value) {
    if (!j.is_object()) {
      Error(Kind::kSchema, path, "expected an object keyed by student label");
      return std::nullopt;
    }
    std::vector<std::optional<T>> out(ground.size());
    bool ok = true;
    for (const auto& [label, v] : j.items()) {
      const std::string p = absl::StrCat(path, ".", label);
      const int s = ground.Find(label);
      if (s < 0) {
        Error(Kind::kReference, p, absl::StrCat("unknown student ", label));
        ok = false;
        continue;
      }
      out[s] = value(v, p);
      if (!out[s]) ok = false;
    }
    std::vector<T> values;
    for (int s = 0; s < ground.size(); ++s) {
      if (!j.contains(ground.Label(s))) {
        Error(Kind::kReference, path,
              absl::StrCat("no entry for student ", ground.Label(s)));
        ok = false;
      } else if (out[s]) {
        values.push_back(*out[s]);
      }
    }
    if (!ok) return std::nullopt;
    return values;
  }

  // {"<type>": value} covering every type exactly once.
  template <typename T, typename Fn>
  std::optional<std::vector<T>> PerType(const std::vector<std::string>& names,
                                        const json& j,
                                        const std::string& path, Fn value) {
    if (!j.is_object()) {
      Error(Kind::kSchema, path, "expected an object keyed by type name");
      return std::nullopt;
    }
    std::vector<std::optional<T>> out(names.size());
    bool ok = true;
    for (const auto& [name, v] : j.items()) {
      const std::string p = absl::StrCat(path, ".", name);
      std::optional<int> t = TypeIndex(names, name, p);
      if (!t) {
        ok = false;
        continue;
      }
      out[*t] = value(v, p);
      if (!out[*t]) ok = false;
    }
    std::vector<T> values;
    for (size_t t = 0; t < names.size(); ++t) {
      if (!j.contains(names[t])) {
        Error(Kind::kReference, path,
              absl::StrCat("no entry for type ", names[t]));
        ok = false;
      } else if (out[t]) {
        values.push_back(*out[t]);
      }
    }
    if (!ok) return std::nullopt;
    return values;
  }
};

struct Context {
  const GroundSet& ground;
  const std::vector<std::string>& type_names;
  const std::optional<TypeAssignment>& tau;
};

bool RequireTypes(Parser& p, const Context& ctx, const std::string& path) {
  if (ctx.tau) return true;
  p.Error(Kind::kReference, path, "this family needs a \"types\" section");
  return false;
}

std::optional<Bounds> ParseBounds(Parser& p, const Context& ctx,
                                  const json& j, const std::string& path) {
  auto bound = [&](const json& v,
                   const std::string& bp)
      -> std::optional<std::pair<int, int>> {
    if (!p.Object(v, bp, {"floor", "ceiling"}, {})) return std::nullopt;
    std::optional<int64_t> floor = p.Int(v["floor"], bp + ".floor");
    std::optional<int64_t> ceiling = p.Int(v["ceiling"], bp + ".ceiling");
    if (!floor || !ceiling) return std::nullopt;
    if (*floor < 0 || *ceiling < 0) {
      p.Error(Kind::kDomain, bp, "bounds must be non-negative");
      return std::nullopt;
    }
    if (*floor > *ceiling) {
      p.Error(Kind::kDomain, bp,
              absl::StrCat("floor r_t = ", *floor, " exceeds ceiling p_t = ",
                           *ceiling, " (need r_t ≤ p_t)"));
      return std::nullopt;
    }
    return std::pair<int, int>(static_cast<int>(*floor),
                               static_cast<int>(*ceiling));
  };
  std::optional<std::vector<std::pair<int, int>>> per_type =
      p.PerType<std::pair<int, int>>(ctx.type_names, j, path, bound);
  if (!per_type) return std::nullopt;
  std::vector<int> floors, ceilings;
  for (const auto& [f, c] : *per_type) {
    floors.push_back(f);
    ceilings.push_back(c);
  }
  absl::StatusOr<Bounds> bounds =
      Bounds::Create(floors, ceilings, static_cast<int>(ctx.type_names.size()));
  if (!bounds.ok()) {
    p.Error(Kind::kDomain, path, std::string(bounds.status().message()));
    return std::nullopt;
  }
  return *bounds;
}

std::optional<ValueFunction> ParseValues(Parser& p, const Context& ctx,
                                         const json& j,
                                         const std::string& path) {
  auto number = [&](const json& v, const std::string& vp) {
    return p.Number(v, vp);
  };
  std::optional<std::vector<double>> values =
      p.PerStudent<double>(ctx.ground, j, path, number);
  if (!values) return std::nullopt;
  absl::StatusOr<ValueFunction> f = ValueFunction::Create(*values);
  if (!f.ok()) {
    p.Error(Kind::kDomain, path, std::string(f.status().message()));
    return std::nullopt;
  }
  return *f;
}

MatroidPtr ParseMatroid(Parser& p, const Context& ctx, const json& j,
                        const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) {
    p.Error(Kind::kSchema, path, "expected an object with a \"kind\"");
    return nullptr;
  }
  std::optional<std::string> kind = p.String(j["kind"], path + ".kind");
  if (!kind) return nullptr;
  absl::StatusOr<MatroidPtr> m = absl::InvalidArgumentError("");
  if (*kind == "uniform") {
    if (!p.Object(j, path, {"kind", "rank"}, {})) return nullptr;
    std::optional<int64_t> rank = p.Int(j["rank"], path + ".rank");
    if (!rank) return nullptr;
    if (*rank < 0) {
      p.Error(Kind::kDomain, path + ".rank", "rank must be non-negative");
      return nullptr;
    }
    m = UniformMatroid(ctx.ground.size(), static_cast<int>(*rank));
  } else if (*kind == "partition") {
    if (!p.Object(j, path, {"kind", "capacities"}, {})) return nullptr;
    if (!RequireTypes(p, ctx, path)) return nullptr;
    auto cap = [&](const json& v, const std::string& vp) -> std::optional<int> {
      std::optional<int64_t> c = p.Int(v, vp);
      if (!c) return std::nullopt;
      if (*c < 0) {
        p.Error(Kind::kDomain, vp, "capacity must be non-negative");
        return std::nullopt;
      }
      return static_cast<int>(*c);
    };
    std::optional<std::vector<int>> caps = p.PerType<int>(
        ctx.type_names, j["capacities"], path + ".capacities", cap);
    if (!caps) return nullptr;
    m = PartitionMatroid({*ctx.tau, *caps});
  } else if (*kind == "transversal") {
    if (!p.Object(j, path, {"kind", "slots"}, {})) return nullptr;
    if (!p.Array(j["slots"], path + ".slots")) return nullptr;
    TransversalMatroidSpec spec{ctx.ground.size(), {}};
    bool ok = true;
    for (size_t k = 0; k < j["slots"].size(); ++k) {
      std::optional<StudentSet> slot = p.Students(
          ctx.ground, j["slots"][k], absl::StrCat(path, ".slots[", k, "]"));
      if (slot) {
        spec.slots.push_back(*slot);
      } else {
        ok = false;
      }
    }
    if (!ok) return nullptr;
    m = TransversalMatroid(spec);
  } else if (*kind == "vector") {
    if (!p.Object(j, path, {"kind", "vectors"}, {})) return nullptr;
    auto vec = [&](const json& v,
                   const std::string& vp) -> std::optional<std::vector<int>> {
      if (!p.Array(v, vp)) return std::nullopt;
      std::vector<int> out;
      for (size_t k = 0; k < v.size(); ++k) {
        std::optional<int64_t> x = p.Int(v[k], absl::StrCat(vp, "[", k, "]"));
        if (!x) return std::nullopt;
        out.push_back(static_cast<int>(*x));
      }
      return out;
    };
    std::optional<std::vector<std::vector<int>>> vectors =
        p.PerStudent<std::vector<int>>(ctx.ground, j["vectors"],
                                       path + ".vectors", vec);
    if (!vectors) return nullptr;
    m = VectorMatroid({*vectors});
  } else {
    p.Error(Kind::kSchema, path + ".kind",
            absl::StrCat("unknown matroid kind ", Quote(j["kind"])));
    return nullptr;
  }
  if (!m.ok()) {
    p.Error(Kind::kDomain, path, std::string(m.status().message()));
    return nullptr;
  }
  return *m;
}

std::optional<DiversityIndex> ParseIndex(Parser& p, const Context& ctx,
                                         const json& j, int q,
                                         const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) {
    p.Error(Kind::kSchema, path, "expected an object with a \"kind\"");
    return std::nullopt;
  }
  std::optional<std::string> kind = p.String(j["kind"], path + ".kind");
  if (!kind) return std::nullopt;
  const int k = static_cast<int>(ctx.type_names.size());
  if (*kind == "log") {
    if (!p.Object(j, path, {"kind"}, {})) return std::nullopt;
    return DiversityIndex::Log(k, q);
  }
  if (*kind == "linear") {
    if (!p.Object(j, path, {"kind", "coefficients"}, {})) return std::nullopt;
    auto number = [&](const json& v, const std::string& vp) {
      return p.Number(v, vp);
    };
    std::optional<std::vector<double>> c = p.PerType<double>(
        ctx.type_names, j["coefficients"], path + ".coefficients", number);
    if (!c) return std::nullopt;
    return DiversityIndex::Linear(*c, q);
  }
  if (*kind == "table") {
    if (!p.Object(j, path, {"kind", "entries"}, {})) return std::nullopt;
    if (!p.Array(j["entries"], path + ".entries")) return std::nullopt;
    std::map<std::vector<int>, double> values;
    bool ok = true;
    for (size_t e = 0; e < j["entries"].size(); ++e) {
      const std::string ep = absl::StrCat(path, ".entries[", e, "]");
      const json& entry = j["entries"][e];
      if (!p.Object(entry, ep, {"counts", "value"}, {})) {
        ok = false;
        continue;
      }
      auto count = [&](const json& v,
                       const std::string& vp) -> std::optional<int> {
        std::optional<int64_t> c = p.Int(v, vp);
        if (!c) return std::nullopt;
        if (*c < 0) {
          p.Error(Kind::kDomain, vp, "counts must be non-negative");
          return std::nullopt;
        }
        return static_cast<int>(*c);
      };
      std::optional<std::vector<int>> counts = p.PerType<int>(
          ctx.type_names, entry["counts"], ep + ".counts", count);
      std::optional<double> value = p.Number(entry["value"], ep + ".value");
      if (!counts || !value) {
        ok = false;
        continue;
      }
      values[*counts] = *value;
    }
    if (!ok) return std::nullopt;
    absl::StatusOr<DiversityIndex> index =
        DiversityIndex::Table(k, q, std::move(values));
    if (!index.ok()) {
      p.Error(Kind::kDomain, path, std::string(index.status().message()));
      return std::nullopt;
    }
    return *index;
  }
  p.Error(Kind::kSchema, path + ".kind",
          absl::StrCat("unknown index kind ", Quote(j["kind"])));
  return std::nullopt;
}

struct ParsedPreference {
  std::string family;
  PreferencePtr pref;
  MatroidPtr matroid;
};

std::optional<ParsedPreference> ParsePreference(Parser& p, const Context& ctx,
                                                const json& j, int q,
                                                const std::string& path) {
  if (!j.is_object() || !j.contains("family")) {
    p.Error(Kind::kSchema, path, "expected an object with a \"family\"");
    return std::nullopt;
  }
  std::optional<std::string> family = p.String(j["family"], path + ".family");
  if (!family) return std::nullopt;
  ParsedPreference out{*family, nullptr, nullptr};
  if (*family == "additive" || *family == "pointwise") {
    if (!p.Object(j, path, {"family", "values"}, {})) return std::nullopt;
    std::optional<ValueFunction> f =
        ParseValues(p, ctx, j["values"], path + ".values");
    if (!f) return std::nullopt;
    out.pref = *family == "additive" ? AdditivePreference(*f)
                                     : PointwisePreference(*f);
  } else if (*family == "indifferent") {
    if (!p.Object(j, path, {"family"}, {})) return std::nullopt;
    out.pref = AdditivePreference(
        *ValueFunction::Create(std::vector<double>(ctx.ground.size(), 0.0)));
  } else if (*family == "dichotomous-bounds" || *family == "soft-bounds") {
    const bool soft = *family == "soft-bounds";
    if (!p.Object(j, path, {"family", "bounds"},
                  soft ? std::initializer_list<const char*>{"floor_weight"}
                       : std::initializer_list<const char*>{})) {
      return std::nullopt;
    }
    if (!RequireTypes(p, ctx, path)) return std::nullopt;
    std::optional<Bounds> bounds =
        ParseBounds(p, ctx, j["bounds"], path + ".bounds");
    std::optional<int64_t> weight;
    if (soft && j.contains("floor_weight")) {
      weight = p.Int(j["floor_weight"], path + ".floor_weight");
      if (!weight) return std::nullopt;
      if (*weight < 1) {
        p.Error(Kind::kDomain, path + ".floor_weight",
                "floor weight must be at least 1");
        return std::nullopt;
      }
    }
    if (!bounds) return std::nullopt;
    out.pref = soft ? SoftBoundsPreference(*ctx.tau, *bounds, q, weight)
                    : DichotomousBoundsPreference(*ctx.tau, *bounds);
  } else if (*family == "matroid-rank") {
    if (!p.Object(j, path, {"family", "matroid"}, {})) return std::nullopt;
    out.matroid = ParseMatroid(p, ctx, j["matroid"], path + ".matroid");
    if (!out.matroid) return std::nullopt;
    out.pref = MatroidRankPreference(out.matroid);
  } else if (*family == "diversity") {
    if (!p.Object(j, path, {"family", "index"}, {})) return std::nullopt;
    if (!RequireTypes(p, ctx, path)) return std::nullopt;
    std::optional<DiversityIndex> index =
        ParseIndex(p, ctx, j["index"], q, path + ".index");
    if (!index) return std::nullopt;
    out.pref = DiversityPreference(*ctx.tau, *index);
  } else {
    p.Error(Kind::kSchema, path + ".family",
            absl::StrCat("unknown preference family ", Quote(j["family"])));
    return std::nullopt;
  }
  return out;
}

std::optional<ChoiceTable> ParseChoiceTable(Parser& p, const GroundSet& ground,
                                            const json& j, int q,
                                            const std::string& path) {
  if (!p.Array(j, path)) return std::nullopt;
  if (ground.size() > kMaxTableGround) {
    p.Error(Kind::kDomain, path,
            absl::StrCat("choice tables need at most ", kMaxTableGround,
                         " students"));
    return std::nullopt;
  }
  const size_t menus = size_t{1} << ground.size();
  std::vector<std::optional<StudentSet>> chosen(menus);
  bool ok = true;
  for (size_t k = 0; k < j.size(); ++k) {
    const std::string ep = absl::StrCat(path, "[", k, "]");
    if (!p.Object(j[k], ep, {"menu", "chosen"}, {})) {
      ok = false;
      continue;
    }
    std::optional<StudentSet> menu =
        p.Students(ground, j[k]["menu"], ep + ".menu");
    std::optional<StudentSet> pick =
        p.Students(ground, j[k]["chosen"], ep + ".chosen");
    if (!menu || !pick) {
      ok = false;
      continue;
    }
    if (chosen[menu->mask()]) {
      p.Error(Kind::kDomain, ep,
              absl::StrCat("menu ", ground.Format(*menu), " listed twice"));
      ok = false;
      continue;
    }
    chosen[menu->mask()] = *pick;
  }
  if (!ok) return std::nullopt;
  std::vector<StudentSet> table;
  int missing = 0;
  for (size_t m = 0; m < menus; ++m) {
    if (!chosen[m]) {
      // The empty menu may be omitted.
      if (m == 0) {
        table.push_back(StudentSet());
        continue;
      }
      ++missing;
      continue;
    }
    table.push_back(*chosen[m]);
  }
  if (missing > 0) {
    p.Error(Kind::kDomain, path,
            absl::StrCat(missing, " of ", menus - 1,
                         " non-empty menus have no entry"));
    return std::nullopt;
  }
  absl::StatusOr<ChoiceTable> t =
      ChoiceTable::FromChoices(ground.size(), q, std::move(table));
  if (!t.ok()) {
    p.Error(Kind::kDomain, path, std::string(t.status().message()));
    return std::nullopt;
  }
  return *t;
}

}  // namespace

std::string InstanceError::ToString() const {
  return absl::StrCat(KindName(kind), " at ", path.empty() ? "$" : path, ": ",
                      message);
}

int Instance::FindSchool(std::string_view name) const {
  for (size_t c = 0; c < schools.size(); ++c) {
    if (schools[c].school.name == name) return static_cast<int>(c);
  }
  return -1;
}

absl::StatusOr<Market> Instance::BuildMarket() const {
  if (!student_preferences) {
    return absl::FailedPreconditionError(
        "the instance has no \"student_preferences\" section");
  }
  std::vector<School> list;
  for (const SchoolSpec& spec : schools) list.push_back(spec.school);
  return Market::Create(ground, std::move(list), *student_preferences);
}

absl::StatusOr<Instance> ParseInstance(std::string_view text,
                                       std::vector<InstanceError>* errors) {
  Parser p;
  auto fail = [&]() -> absl::Status {
    std::vector<std::string> lines;
    for (const InstanceError& e : p.errors) lines.push_back(e.ToString());
    if (errors != nullptr) *errors = p.errors;
    return absl::InvalidArgumentError(absl::StrJoin(lines, "\n"));
  };

  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    p.Error(Kind::kSchema, "", "not a valid JSON document");
    return fail();
  }
  if (!p.Object(doc, "",
                {"schema_version", "students", "schools"},
                {"types", "student_preferences", "description"})) {
    if (!doc.is_object() || !doc.contains("students")) return fail();
  }
  if (doc.contains("schema_version")) {
    std::optional<int64_t> v = p.Int(doc["schema_version"], "schema_version");
    if (v && *v != 1) {
      p.Error(Kind::kSchema, "schema_version",
              absl::StrCat("unsupported schema version ", *v));
    }
  }

  // Students.
  std::optional<GroundSet> ground;
  {
    const json& j = doc["students"];
    if (p.Object(j, "students", {"count"}, {"labels"})) {
      std::optional<int64_t> count = p.Int(j["count"], "students.count");
      std::vector<std::string> labels;
      bool labels_ok = true;
      if (j.contains("labels") && p.Array(j["labels"], "students.labels")) {
        for (size_t k = 0; k < j["labels"].size(); ++k) {
          std::optional<std::string> label = p.String(
              j["labels"][k], absl::StrCat("students.labels[", k, "]"));
          if (label) {
            labels.push_back(*label);
          } else {
            labels_ok = false;
          }
        }
      }
      if (count && *count < 1) {
        p.Error(Kind::kDomain, "students.count",
                "the student list is empty (need at least 1 student)");
      } else if (count && *count > kMaxStudents) {
        p.Error(Kind::kDomain, "students.count",
                absl::StrCat("at most ", kMaxStudents, " students"));
      } else if (count && labels_ok) {
        absl::StatusOr<GroundSet> g =
            GroundSet::Create(static_cast<int>(*count), labels);
        if (g.ok()) {
          ground = *g;
        } else {
          p.Error(Kind::kDomain, "students", std::string(g.status().message()));
        }
      }
    }
  }
  if (!ground) return fail();

  // Types.
  std::vector<std::string> type_names;
  std::optional<TypeAssignment> tau;
  if (doc.contains("types")) {
    const json& j = doc["types"];
    if (p.Object(j, "types", {"names", "of"}, {})) {
      bool names_ok = p.Array(j["names"], "types.names") != nullptr;
      if (names_ok) {
        for (size_t k = 0; k < j["names"].size(); ++k) {
          const std::string path = absl::StrCat("types.names[", k, "]");
          std::optional<std::string> name = p.String(j["names"][k], path);
          if (!name) {
            names_ok = false;
          } else if (std::find(type_names.begin(), type_names.end(), *name) !=
                     type_names.end()) {
            p.Error(Kind::kDomain, path,
                    absl::StrCat("type ", *name, " listed twice"));
            names_ok = false;
          } else {
            type_names.push_back(*name);
          }
        }
        if (names_ok && type_names.empty()) {
          p.Error(Kind::kDomain, "types.names", "need at least one type");
          names_ok = false;
        }
      }
      if (names_ok) {
        auto type_of = [&](const json& v,
                           const std::string& path) -> std::optional<int> {
          std::optional<std::string> name = p.String(v, path);
          if (!name) return std::nullopt;
          return p.TypeIndex(type_names, *name, path);
        };
        std::optional<std::vector<int>> types =
            p.PerStudent<int>(*ground, j["of"], "types.of", type_of);
        if (types) {
          tau = *TypeAssignment::Create(*types,
                                        static_cast<int>(type_names.size()));
        }
      }
    }
  }
  const Context ctx{*ground, type_names, tau};

  // Schools.
  std::vector<SchoolSpec> schools;
  bool schools_ok = true;
  if (doc.contains("schools") && p.Array(doc["schools"], "schools")) {
    if (doc["schools"].empty()) {
      p.Error(Kind::kDomain, "schools", "need at least one school");
    }
    for (size_t c = 0; c < doc["schools"].size(); ++c) {
      const std::string path = absl::StrCat("schools[", c, "]");
      const json& j = doc["schools"][c];
      if (!p.Object(j, path, {"name", "capacity", "preference"},
                    {"priority", "choice_table"})) {
        schools_ok = false;
        continue;
      }
      std::optional<std::string> name = p.String(j["name"], path + ".name");
      // Zero marks an unusable capacity.
      int q = 0;
      if (std::optional<int64_t> c = p.Int(j["capacity"], path + ".capacity")) {
        if (*c < 1 || *c > kMaxStudents) {
          p.Error(Kind::kDomain, path + ".capacity",
                  absl::StrCat("capacity q = ", *c,
                               " must be between 1 and ", kMaxStudents));
        } else {
          q = static_cast<int>(*c);
        }
      }
      if (name) {
        for (const SchoolSpec& other : schools) {
          if (other.school.name == *name) {
            p.Error(Kind::kDomain, path + ".name",
                    absl::StrCat("school ", *name, " defined twice"));
            name.reset();
            break;
          }
        }
      }
      std::optional<PriorityRanking> priority =
          PriorityRanking::Identity(ground->size());
      if (j.contains("priority")) {
        const std::string pp = path + ".priority";
        priority.reset();
        if (p.Array(j["priority"], pp)) {
          std::vector<int> order;
          bool ok = true;
          for (size_t k = 0; k < j["priority"].size(); ++k) {
            std::optional<int> s = p.Student(
                *ground, j["priority"][k], absl::StrCat(pp, "[", k, "]"));
            if (s) {
              order.push_back(*s);
            } else {
              ok = false;
            }
          }
          if (ok) {
            absl::StatusOr<PriorityRanking> pi = PriorityRanking::Create(order);
            if (pi.ok() && pi->size() == ground->size()) {
              priority = *pi;
            } else {
              p.Error(Kind::kDomain, pp,
                      "priority must rank every student exactly once");
            }
          }
        }
      }
      std::optional<ParsedPreference> pref;
      if (q > 0) {
        pref = ParsePreference(p, ctx, j["preference"],
                               q,
                               path + ".preference");
      }
      std::optional<ChoiceTable> table;
      bool table_ok = true;
      if (j.contains("choice_table") && q > 0) {
        table = ParseChoiceTable(p, *ground, j["choice_table"],
                                 q,
                                 path + ".choice_table");
        table_ok = table.has_value();
      }
      if (!name || q == 0 || !priority || !pref || !table_ok) {
        schools_ok = false;
        continue;
      }
      schools.push_back({School{*name, q, *priority, pref->pref},
                         pref->family, pref->matroid, std::move(table)});
    }
  }

  // Student preference lists.
  std::optional<std::vector<StudentPreference>> student_preferences;
  if (doc.contains("student_preferences") && schools_ok) {
    auto list = [&](const json& v,
                    const std::string& path)
        -> std::optional<StudentPreference> {
      if (!p.Array(v, path)) return std::nullopt;
      StudentPreference out;
      for (size_t k = 0; k < v.size(); ++k) {
        const std::string ep = absl::StrCat(path, "[", k, "]");
        std::optional<std::string> name = p.String(v[k], ep);
        if (!name) return std::nullopt;
        int c = -1;
        for (size_t i = 0; i < schools.size(); ++i) {
          if (schools[i].school.name == *name) c = static_cast<int>(i);
        }
        if (c < 0) {
          p.Error(Kind::kReference, ep, absl::StrCat("unknown school ", *name));
          return std::nullopt;
        }
        if (std::find(out.begin(), out.end(), c) != out.end()) {
          p.Error(Kind::kDomain, ep,
                  absl::StrCat("school ", *name, " listed twice"));
          return std::nullopt;
        }
        out.push_back(c);
      }
      return out;
    };
    student_preferences = p.PerStudent<StudentPreference>(
        *ground, doc["student_preferences"], "student_preferences", list);
  }

  if (!p.errors.empty()) return fail();
  if (errors != nullptr) errors->clear();
  return Instance{*std::move(ground), std::move(type_names), std::move(tau),
                  std::move(schools), std::move(student_preferences)};
}

absl::StatusOr<Instance> LoadInstance(const std::string& path,
                                      std::vector<InstanceError>* errors) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str(), errors);
}

absl::StatusOr<StudentSet> ParseStudentList(const GroundSet& ground,
                                            std::string_view text) {
  const absl::string_view trimmed =
      absl::StripAsciiWhitespace(absl::string_view(text.data(), text.size()));
  if (trimmed == "all") return ground.All();
  StudentSet out;
  if (trimmed.empty() || trimmed == "none") return out;
  for (absl::string_view part : absl::StrSplit(trimmed, ',')) {
    part = absl::StripAsciiWhitespace(part);
    const int s = ground.Find(std::string_view(part.data(), part.size()));
    if (s < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("ReferenceError: unknown student ", part));
    }
    out = out.With(s);
  }
  return out;
}

}  // namespace distchoice
