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

#include "distchoice/cli.h"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "distchoice/choice.h"
#include "distchoice/core.h"
#include "distchoice/frontier.h"
#include "distchoice/instance.h"
#include "distchoice/matroid.h"
#include "distchoice/mechanism.h"
#include "distchoice/subsets.h"
#include "json.hpp"

namespace distchoice {
namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string suite;
  std::string instance;
  std::string school;
  std::string pool = "all";
  std::string a;
  std::string b;
  std::string path = "auto";
  std::string mechanism = "da";
  bool trace = false;
  std::string format = "json";
  uint64_t max_subsets = EnumerationBudget().max_subsets;
  int64_t max_reports = 1 << 16;
  bool timing = false;
};

struct Outcome {
  json result = json::object();
  json checks = json::array();
  bool violated = false;
};

json Labels(const GroundSet& ground, StudentSet s) {
  return json(ground.Labels(s));
}

std::string SchoolName(const Market& market, int c) {
  return c == kOutsideOption ? std::string("outside")
                             : market.school(c).name;
}

void AddCheck(Outcome& out, const std::string& name, bool passed,
              int64_t cases, int64_t violation_count, json witnesses,
              json extra = json::object()) {
  json check;
  check["name"] = name;
  check["passed"] = passed;
  check["cases_checked"] = cases;
  check["violation_count"] = violation_count;
  for (auto& [k, v] : extra.items()) check[k] = v;
  check["witnesses"] = std::move(witnesses);
  out.checks.push_back(std::move(check));
  if (!passed) out.violated = true;
}

// --school when given, otherwise the only school.
absl::StatusOr<int> SingleSchool(const Instance& inst, const Options& opt) {
  if (opt.school.empty()) {
    if (inst.schools.size() == 1) return 0;
    return absl::InvalidArgumentError(absl::StrCat(
        "--school is required: the instance has ", inst.schools.size(),
        " schools"));
  }
  const int c = inst.FindSchool(opt.school);
  if (c < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("ReferenceError: unknown school ", opt.school));
  }
  return c;
}

// --school when given, otherwise every school.
absl::StatusOr<std::vector<int>> SelectSchools(const Instance& inst,
                                               const Options& opt) {
  if (opt.school.empty()) {
    std::vector<int> all;
    for (size_t c = 0; c < inst.schools.size(); ++c) {
      all.push_back(static_cast<int>(c));
    }
    return all;
  }
  absl::StatusOr<int> c = SingleSchool(inst, opt);
  if (!c.ok()) return c.status();
  return std::vector<int>{*c};
}

EnumerationBudget Budget(const Options& opt) {
  EnumerationBudget budget;
  budget.max_subsets = opt.max_subsets;
  return budget;
}

// The school's explicit choice table when it has one, Ch^π otherwise.
ChoiceRulePtr SchoolRule(const SchoolSpec& spec, const EnumerationBudget& b) {
  if (spec.choice_table) {
    return TableChoiceRule(spec.school.name + "/table", *spec.choice_table);
  }
  return DistributionalChoiceRule(spec.school.preference, spec.school.priority,
                                  spec.school.capacity, b);
}

std::string Prefix(const Instance& inst, const std::vector<int>& schools,
                   int c) {
  if (inst.schools.size() == 1 && schools.size() == 1) return "";
  return inst.schools[c].school.name + "/";
}

json AxiomWitnesses(const GroundSet& ground, const AxiomReport& report) {
  json out = json::array();
  for (const AxiomViolation& v : report.violations) {
    json w;
    w["menu"] = Labels(ground, v.menu);
    w["chosen"] = Labels(ground, v.chosen);
    if (report.axiom == "promotes") {
      w["better"] = Labels(ground, v.witness);
    } else if (report.axiom == "no-justified-envy") {
      w["admitted"] = ground.Label(v.student);
      w["rejected"] = ground.Label(v.other);
    } else if (report.axiom == "path-independence") {
      w["other_menu"] = Labels(ground, v.witness);
    } else if (report.axiom == "consistency") {
      w["removed"] = ground.Label(v.student);
    } else if (report.axiom == "substitutability") {
      w["student"] = ground.Label(v.student);
      w["removed"] = ground.Label(v.other);
    }
    out.push_back(std::move(w));
  }
  return out;
}

void AddAxiomCheck(Outcome& out, const std::string& prefix,
                   const GroundSet& ground, const AxiomReport& report) {
  AddCheck(out, prefix + report.axiom, report.passed(), report.menus_checked,
           report.violation_count, AxiomWitnesses(ground, report));
}

json PropertyWitnesses(const GroundSet& ground,
                       const std::vector<PropertyViolation>& violations) {
  json out = json::array();
  for (const PropertyViolation& v : violations) {
    json w;
    w["first"] = Labels(ground, v.first);
    w["second"] = Labels(ground, v.second);
    if (v.student >= 0) w["student"] = ground.Label(v.student);
    out.push_back(std::move(w));
  }
  return out;
}

std::string BaseKindName(BaseAxiomViolation::Kind kind) {
  switch (kind) {
    case BaseAxiomViolation::Kind::kEmpty:
      return "empty";
    case BaseAxiomViolation::Kind::kCardinality:
      return "cardinality";
    case BaseAxiomViolation::Kind::kExchange:
      return "exchange";
    case BaseAxiomViolation::Kind::kStrongExchange:
      return "strong-exchange";
  }
  return "unknown";
}

json MatchingJson(const Market& market, const Matching& mu) {
  json assignment = json::object();
  for (int s = 0; s < market.num_students(); ++s) {
    assignment[market.ground().Label(s)] =
        mu.assignment[s] == kOutsideOption
            ? json(nullptr)
            : json(market.school(mu.assignment[s]).name);
  }
  return assignment;
}

json SchoolsJson(const Market& market, const std::vector<StudentSet>& held) {
  json out = json::object();
  for (int c = 0; c < market.num_schools(); ++c) {
    out[market.school(c).name] = Labels(market.ground(), held[c]);
  }
  return out;
}

std::vector<StudentSet> Assigned(const Market& market, const Matching& mu) {
  std::vector<StudentSet> out;
  for (int c = 0; c < market.num_schools(); ++c) {
    out.push_back(mu.AssignedTo(c));
  }
  return out;
}

json PairsJson(const Market& market,
               const std::vector<std::pair<int, int>>& pairs) {
  json out = json::array();
  for (const auto& [s, c] : pairs) {
    json p;
    p["student"] = market.ground().Label(s);
    p["school"] = market.school(c).name;
    out.push_back(std::move(p));
  }
  return out;
}

// Commands.

absl::StatusOr<Outcome> RunChoose(const Instance& inst, const Options& opt) {
  absl::StatusOr<int> c = SingleSchool(inst, opt);
  if (!c.ok()) return c.status();
  absl::StatusOr<StudentSet> pool = ParseStudentList(inst.ground, opt.pool);
  if (!pool.ok()) return pool.status();
  const SchoolSpec& spec = inst.schools[*c];
  ChoicePath path = ChoicePath::kAuto;
  if (opt.path == "enumeration") path = ChoicePath::kEnumeration;
  if (opt.path == "matroid") path = ChoicePath::kMatroidFastPath;
  absl::StatusOr<StudentSet> chosen;
  std::string rule = "greedy";
  if (spec.choice_table && opt.path == "auto") {
    chosen = (*spec.choice_table)(*pool);
    rule = "choice-table";
  } else {
    chosen = DistributionalChoice(*spec.school.preference,
                                  spec.school.priority, spec.school.capacity,
                                  *pool, Budget(opt), path);
  }
  if (!chosen.ok()) return chosen.status();
  Outcome out;
  out.result["school"] = spec.school.name;
  out.result["rule"] = rule;
  out.result["pool"] = Labels(inst.ground, *pool);
  out.result["chosen"] = Labels(inst.ground, *chosen);
  return out;
}

absl::StatusOr<Outcome> RunFrontier(const Instance& inst, const Options& opt) {
  absl::StatusOr<int> c = SingleSchool(inst, opt);
  if (!c.ok()) return c.status();
  absl::StatusOr<StudentSet> pool = ParseStudentList(inst.ground, opt.pool);
  if (!pool.ok()) return pool.status();
  const School& school = inst.schools[*c].school;
  absl::StatusOr<FrontierResult> f = ComputeFrontier(
      *school.preference, *pool, school.capacity, Budget(opt));
  if (!f.ok()) return f.status();
  Outcome out;
  out.result["school"] = school.name;
  out.result["pool"] = Labels(inst.ground, *pool);
  out.result["target_size"] = f->target_size;
  json members = json::array();
  for (StudentSet m : f->members) members.push_back(Labels(inst.ground, m));
  out.result["members"] = std::move(members);
  return out;
}

absl::StatusOr<Outcome> RunCompare(const Instance& inst, const Options& opt) {
  absl::StatusOr<int> c = SingleSchool(inst, opt);
  if (!c.ok()) return c.status();
  absl::StatusOr<StudentSet> a = ParseStudentList(inst.ground, opt.a);
  if (!a.ok()) return a.status();
  absl::StatusOr<StudentSet> b = ParseStudentList(inst.ground, opt.b);
  if (!b.ok()) return b.status();
  const School& school = inst.schools[*c].school;
  absl::StatusOr<Comparison> verdict = school.preference->Compare(*a, *b);
  if (!verdict.ok()) return verdict.status();
  Outcome out;
  out.result["school"] = school.name;
  out.result["a"] = Labels(inst.ground, *a);
  out.result["b"] = Labels(inst.ground, *b);
  out.result["comparison"] = std::string(ComparisonName(*verdict));
  return out;
}

absl::StatusOr<Outcome> RunDa(const Instance& inst, const Options& opt) {
  absl::StatusOr<Market> market = inst.BuildMarket();
  if (!market.ok()) return market.status();
  DaOptions options;
  options.keep_trace = opt.trace;
  options.budget = Budget(opt);
  absl::StatusOr<DaResult> r = DeferredAcceptance(*market, options);
  if (!r.ok()) return r.status();
  Outcome out;
  out.result["matching"] = MatchingJson(*market, r->matching);
  out.result["schools"] = SchoolsJson(*market, Assigned(*market, r->matching));
  out.result["rounds"] = r->rounds;
  if (opt.trace) {
    json trace = json::array();
    for (const DaRound& round : r->trace) {
      json j;
      j["round"] = round.round;
      j["proposals"] = PairsJson(*market, round.proposals);
      j["held"] = SchoolsJson(*market, round.held);
      j["rejections"] = PairsJson(*market, round.rejections);
      trace.push_back(std::move(j));
    }
    out.result["trace"] = std::move(trace);
  }
  return out;
}

absl::Status VerifyStructural(const Instance& inst, const Options& opt,
                              Outcome& out) {
  absl::StatusOr<std::vector<int>> schools = SelectSchools(inst, opt);
  if (!schools.ok()) return schools.status();
  for (int c : *schools) {
    const School& school = inst.schools[c].school;
    absl::StatusOr<StructuralCertificate> cert = CertifyPreference(
        *school.preference, inst.ground, school.capacity, Budget(opt));
    if (!cert.ok()) return cert.status();
    const std::string prefix = Prefix(inst, *schools, c);
    for (const PropertyReport* r :
         {&cert->upper_bound, &cert->maximizer, &cert->improvement}) {
      json extra;
      extra["hypotheses_met"] = r->hypotheses_met;
      extra["vacuous"] = r->vacuous();
      AddCheck(out, prefix + r->property, r->passed(), r->cases_checked,
               static_cast<int64_t>(r->violations.size()),
               PropertyWitnesses(inst.ground, r->violations), extra);
    }
    out.result[school.name]["supports_uniqueness"] =
        cert->SupportsUniqueness();
    out.result[school.name]["supports_path_independence"] =
        cert->SupportsPathIndependence();
  }
  return absl::OkStatus();
}

absl::Status VerifyChoiceAxioms(const Instance& inst, const Options& opt,
                                Outcome& out) {
  absl::StatusOr<std::vector<int>> schools = SelectSchools(inst, opt);
  if (!schools.ok()) return schools.status();
  for (int c : *schools) {
    const SchoolSpec& spec = inst.schools[c];
    const ChoiceRulePtr rule = SchoolRule(spec, Budget(opt));
    const std::string prefix = Prefix(inst, *schools, c);
    const int q = spec.school.capacity;
    absl::StatusOr<AxiomReport> nw = CheckNonWasteful(*rule, inst.ground, q);
    if (!nw.ok()) return nw.status();
    absl::StatusOr<AxiomReport> pr =
        CheckPromotes(*rule, *spec.school.preference, inst.ground, q);
    if (!pr.ok()) return pr.status();
    absl::StatusOr<AxiomReport> nje =
        CheckNoJustifiedEnvy(*rule, *spec.school.preference,
                             spec.school.priority, inst.ground);
    if (!nje.ok()) return nje.status();
    AddAxiomCheck(out, prefix, inst.ground, *nw);
    AddAxiomCheck(out, prefix, inst.ground, *pr);
    AddAxiomCheck(out, prefix, inst.ground, *nje);
    out.result[spec.school.name]["rule"] =
        spec.choice_table ? "choice-table" : "greedy";
  }
  return absl::OkStatus();
}

absl::Status VerifyPathIndependence(const Instance& inst, const Options& opt,
                                    Outcome& out) {
  absl::StatusOr<std::vector<int>> schools = SelectSchools(inst, opt);
  if (!schools.ok()) return schools.status();
  for (int c : *schools) {
    const SchoolSpec& spec = inst.schools[c];
    const ChoiceRulePtr rule = SchoolRule(spec, Budget(opt));
    absl::StatusOr<PathIndependenceReport> r =
        CheckPathIndependence(*rule, inst.ground);
    if (!r.ok()) return r.status();
    const std::string prefix = Prefix(inst, *schools, c);
    AddAxiomCheck(out, prefix, inst.ground, r->direct);
    AddAxiomCheck(out, prefix, inst.ground, r->consistency);
    AddAxiomCheck(out, prefix, inst.ground, r->substitutability);
    out.result[spec.school.name]["rule"] =
        spec.choice_table ? "choice-table" : "greedy";
    out.result[spec.school.name]["decomposition_agrees"] = r->agrees();
  }
  return absl::OkStatus();
}

absl::Status VerifyMatroidAxioms(const Instance& inst, const Options& opt,
                                 Outcome& out) {
  absl::StatusOr<std::vector<int>> schools = SelectSchools(inst, opt);
  if (!schools.ok()) return schools.status();
  const EnumerationBudget budget = Budget(opt);
  if (inst.ground.size() > budget.max_checker_ground) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exceeded: frontier bases are checked on every menu of at most ",
        budget.max_checker_ground, " students"));
  }
  for (int c : *schools) {
    const SchoolSpec& spec = inst.schools[c];
    const std::string prefix = Prefix(inst, *schools, c);
    if (spec.matroid) {
      std::vector<MatroidAxiomViolation> v = CheckMatroidAxioms(*spec.matroid);
      json witnesses = json::array();
      for (const MatroidAxiomViolation& x : v) {
        json w;
        w["axiom"] = x.axiom;
        w["first"] = Labels(inst.ground, x.first);
        w["second"] = Labels(inst.ground, x.second);
        witnesses.push_back(std::move(w));
      }
      AddCheck(out, prefix + "matroid", v.empty(),
               int64_t{1} << inst.ground.size(),
               static_cast<int64_t>(v.size()), std::move(witnesses));
    }
    json witnesses = json::array();
    int64_t menus = 0, failures = 0;
    absl::Status status = absl::OkStatus();
    ForEachSubset(inst.ground.All(), [&](StudentSet menu) {
      if (!status.ok()) return;
      ++menus;
      absl::StatusOr<FrontierResult> f =
          ComputeFrontier(*spec.school.preference, menu, spec.school.capacity,
                          budget);
      if (!f.ok()) {
        status = f.status();
        return;
      }
      BaseAxiomReport r = CheckBaseAxioms(f->members);
      if (r.passed()) return;
      ++failures;
      if (witnesses.size() >= AxiomReport::kMaxWitnesses) return;
      const BaseAxiomViolation& v = r.violations.front();
      json w;
      w["menu"] = Labels(inst.ground, menu);
      w["axiom"] = BaseKindName(v.kind);
      w["first"] = Labels(inst.ground, v.first);
      w["second"] = Labels(inst.ground, v.second);
      if (v.student >= 0) w["student"] = inst.ground.Label(v.student);
      witnesses.push_back(std::move(w));
    });
    if (!status.ok()) return status;
    AddCheck(out, prefix + "frontier-bases", failures == 0, menus, failures,
             std::move(witnesses));
  }
  return absl::OkStatus();
}

absl::Status VerifyMatchingAxioms(const Instance& inst, const Options& opt,
                                  Outcome& out) {
  absl::StatusOr<Market> market = inst.BuildMarket();
  if (!market.ok()) return market.status();
  DaOptions options;
  options.keep_trace = false;
  options.budget = Budget(opt);
  absl::StatusOr<DaResult> r = DeferredAcceptance(*market, options);
  if (!r.ok()) return r.status();
  absl::StatusOr<MatchingAxiomReport> axioms =
      CheckMatchingAxioms(*market, r->matching, options.budget);
  if (!axioms.ok()) return axioms.status();
  out.result["matching"] = MatchingJson(*market, r->matching);
  const GroundSet& ground = market->ground();
  for (const MatchingReport* report :
       {&axioms->non_wasteful, &axioms->promotes, &axioms->no_justified_envy,
        &axioms->individual_rationality}) {
    json witnesses = json::array();
    for (const MatchingViolation& v : report->violations) {
      json w;
      w["school"] = market->school(v.school).name;
      if (v.student >= 0) w["student"] = ground.Label(v.student);
      if (v.other >= 0) w["other"] = ground.Label(v.other);
      if (report->axiom == "promotes") w["better"] = Labels(ground, v.witness);
      witnesses.push_back(std::move(w));
    }
    AddCheck(out, report->axiom, report->passed(), report->cases_checked,
             static_cast<int64_t>(report->violations.size()),
             std::move(witnesses));
  }
  return absl::OkStatus();
}

absl::Status VerifyStrategyProofness(const Instance& inst, const Options& opt,
                                     Outcome& out) {
  absl::StatusOr<Market> market = inst.BuildMarket();
  if (!market.ok()) return market.status();
  const Mechanism mechanism = opt.mechanism == "ia"
                                  ? ImmediateAcceptanceMechanism()
                                  : DeferredAcceptanceMechanism(Budget(opt));
  absl::StatusOr<StrategyProofnessReport> r =
      CheckStrategyProofness(*market, mechanism, opt.max_reports);
  if (!r.ok()) return r.status();
  out.result["mechanism"] = opt.mechanism;
  json witnesses = json::array();
  for (const Deviation& d : r->deviations) {
    json w;
    w["student"] = market->ground().Label(d.student);
    json report = json::array();
    for (int c : d.report) report.push_back(market->school(c).name);
    w["report"] = std::move(report);
    w["truthful"] = SchoolName(*market, d.truthful);
    w["deviated"] = SchoolName(*market, d.deviated);
    witnesses.push_back(std::move(w));
  }
  AddCheck(out, "strategy-proofness", r->passed(), r->reports_checked,
           static_cast<int64_t>(r->deviations.size()), std::move(witnesses));
  return absl::OkStatus();
}

absl::StatusOr<Outcome> RunVerify(const Instance& inst, const Options& opt) {
  Outcome out;
  absl::Status st;
  if (opt.suite == "structural-properties") {
    st = VerifyStructural(inst, opt, out);
  } else if (opt.suite == "choice-axioms") {
    st = VerifyChoiceAxioms(inst, opt, out);
  } else if (opt.suite == "path-independence") {
    st = VerifyPathIndependence(inst, opt, out);
  } else if (opt.suite == "matroid-axioms") {
    st = VerifyMatroidAxioms(inst, opt, out);
  } else if (opt.suite == "matching-axioms") {
    st = VerifyMatchingAxioms(inst, opt, out);
  } else {
    st = VerifyStrategyProofness(inst, opt, out);
  }
  if (!st.ok()) return st;
  return out;
}

absl::StatusOr<Outcome> RunReveal(const Instance& inst, const Options& opt) {
  absl::StatusOr<int> c = SingleSchool(inst, opt);
  if (!c.ok()) return c.status();
  const SchoolSpec& spec = inst.schools[*c];
  const EnumerationBudget budget = Budget(opt);
  const ChoiceRulePtr rule = SchoolRule(spec, budget);
  absl::StatusOr<RevealResult> r = RevealPriorities(
      *rule, *spec.school.preference, inst.ground, spec.school.capacity);
  if (!r.ok()) return r.status();
  Outcome out;
  out.result["school"] = spec.school.name;
  out.result["rule"] = spec.choice_table ? "choice-table" : "greedy";
  if (const CycleWitness* cycle = std::get_if<CycleWitness>(&*r)) {
    json students = json::array();
    for (int s : cycle->students) students.push_back(inst.ground.Label(s));
    json menus = json::array();
    for (StudentSet m : cycle->menus) menus.push_back(Labels(inst.ground, m));
    json w;
    w["students"] = std::move(students);
    w["menus"] = std::move(menus);
    AddCheck(out, "acyclic", false, 1, 1, json::array({std::move(w)}));
    return out;
  }
  const PriorityRanking& ranking = std::get<PriorityRanking>(*r);
  json order = json::array();
  for (int s : ranking.order()) order.push_back(inst.ground.Label(s));
  out.result["ranking"] = std::move(order);
  AddCheck(out, "acyclic", true, 1, 0, json::array());
  // Round trip: the revealed ranking induces the same rule.
  const ChoiceRulePtr induced = DistributionalChoiceRule(
      spec.school.preference, ranking, spec.school.capacity, budget);
  absl::StatusOr<ChoiceTable> a = ChoiceTable::Tabulate(*rule, inst.ground);
  if (!a.ok()) return a.status();
  absl::StatusOr<ChoiceTable> b = ChoiceTable::Tabulate(*induced, inst.ground);
  if (!b.ok()) return b.status();
  json witnesses = json::array();
  int64_t menus = 0, mismatches = 0;
  ForEachSubset(inst.ground.All(), [&](StudentSet m) {
    ++menus;
    if ((*a)(m) == (*b)(m)) return;
    ++mismatches;
    if (witnesses.size() >= AxiomReport::kMaxWitnesses) return;
    json w;
    w["menu"] = Labels(inst.ground, m);
    w["rule"] = Labels(inst.ground, (*a)(m));
    w["induced"] = Labels(inst.ground, (*b)(m));
    witnesses.push_back(std::move(w));
  });
  AddCheck(out, "round-trip", mismatches == 0, menus, mismatches,
           std::move(witnesses));
  return out;
}

// Reports.

bool IsFlat(const json& j) {
  if (j.is_object()) return j.empty();
  if (!j.is_array()) return true;
  for (const json& e : j) {
    if (!IsFlat(e)) return false;
  }
  return true;
}

std::string Inline(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_object()) return "{}";
  if (j.is_array()) {
    std::string s = "[";
    for (size_t k = 0; k < j.size(); ++k) {
      if (k > 0) s += ", ";
      s += Inline(j[k]);
    }
    return s + "]";
  }
  return j.dump();
}

void RenderText(const json& j, int indent, std::ostream& out) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      out << pad << key << ":";
      if (IsFlat(value)) {
        out << " " << Inline(value) << "\n";
      } else {
        out << "\n";
        RenderText(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const json& e : j) {
      if (IsFlat(e)) {
        out << pad << "- " << Inline(e) << "\n";
      } else {
        out << pad << "-\n";
        RenderText(e, indent + 2, out);
      }
    }
  } else {
    out << pad << Inline(j) << "\n";
  }
}

void Emit(const json& report, const std::string& format, std::ostream& out) {
  if (format == "text") {
    RenderText(report, 0, out);
  } else {
    out << report.dump(2) << "\n";
  }
}

json CommandEcho(const Options& opt) {
  json echo;
  echo["name"] = opt.command;
  if (!opt.suite.empty()) echo["suite"] = opt.suite;
  echo["instance"] = opt.instance;
  if (!opt.school.empty()) echo["school"] = opt.school;
  if (opt.command == "choose" || opt.command == "frontier") {
    echo["pool"] = opt.pool;
  }
  if (opt.command == "choose") echo["path"] = opt.path;
  if (opt.command == "compare") {
    echo["a"] = opt.a;
    echo["b"] = opt.b;
  }
  if (opt.command == "da") echo["trace"] = opt.trace;
  if (opt.suite == "strategy-proofness") echo["mechanism"] = opt.mechanism;
  return echo;
}

}  // namespace

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  Options opt;
  CLI::App app{"Distributional choice rules, deferred acceptance and their "
               "axiom checkers.",
               "distchoice"};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-subsets", opt.max_subsets,
                 "Largest number of candidate sets per frontier")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-reports", opt.max_reports,
                 "Largest number of alternative reports for "
                 "strategy-proofness")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", opt.timing, "Include elapsed time in the report");

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("--instance", opt.instance, "Instance file (JSON)")
        ->required();
    return sub;
  };
  CLI::App* choose = add("choose", "Ch^π of one school on a pool");
  choose->add_option("--school", opt.school, "School name");
  choose->add_option("--pool", opt.pool, "all, none or s1,s2,...");
  choose->add_option("--path", opt.path, "Execution path")
      ->check(CLI::IsMember({"auto", "enumeration", "matroid"}));
  CLI::App* frontier = add("frontier", "Undominated non-wasteful sets");
  frontier->add_option("--school", opt.school, "School name");
  frontier->add_option("--pool", opt.pool, "all, none or s1,s2,...");
  CLI::App* compare = add("compare", "Compare two sets under a school");
  compare->add_option("--school", opt.school, "School name");
  compare->add_option("--a", opt.a, "First set")->required();
  compare->add_option("--b", opt.b, "Second set")->required();
  CLI::App* da = add("da", "Student-proposing deferred acceptance");
  da->add_flag("--trace", opt.trace, "Include the per-round trace");
  CLI::App* verify = add("verify", "Run a verification suite");
  verify->add_option("suite", opt.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"structural-properties", "choice-axioms",
                             "path-independence", "matroid-axioms",
                             "matching-axioms", "strategy-proofness"}));
  verify->add_option("--school", opt.school, "School name (default: all)");
  verify->add_option("--mechanism", opt.mechanism,
                     "Mechanism for strategy-proofness")
      ->check(CLI::IsMember({"da", "ia"}));
  CLI::App* reveal = add("reveal", "Revealed priority ranking of a rule");
  reveal->add_option("--school", opt.school, "School name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* sub = app.get_subcommands().empty() ? &app
                                                  : app.get_subcommands()[0];
    out << sub->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  opt.command = app.get_subcommands()[0]->get_name();

  const auto start = std::chrono::steady_clock::now();
  json report;
  report["command"] = CommandEcho(opt);
  auto finish = [&](json& r) {
    json budget;
    budget["max_subsets"] = opt.max_subsets;
    budget["max_reports"] = opt.max_reports;
    r["budget"] = std::move(budget);
    if (opt.timing) {
      r["timing_ms"] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
    Emit(r, opt.format, out);
  };
  auto fail = [&](const absl::Status& status) {
    json error;
    error["code"] = absl::StatusCodeToString(status.code());
    json messages = json::array();
    for (absl::string_view line : absl::StrSplit(status.message(), '\n')) {
      messages.push_back(std::string(line));
    }
    error["messages"] = std::move(messages);
    report["verdict"] = "error";
    report["error"] = std::move(error);
    finish(report);
    err << "error: " << status.message() << "\n";
    return kExitInputError;
  };

  absl::StatusOr<Instance> inst = LoadInstance(opt.instance);
  if (!inst.ok()) return fail(inst.status());

  absl::StatusOr<Outcome> outcome;
  if (opt.command == "choose") {
    outcome = RunChoose(*inst, opt);
  } else if (opt.command == "frontier") {
    outcome = RunFrontier(*inst, opt);
  } else if (opt.command == "compare") {
    outcome = RunCompare(*inst, opt);
  } else if (opt.command == "da") {
    outcome = RunDa(*inst, opt);
  } else if (opt.command == "verify") {
    outcome = RunVerify(*inst, opt);
  } else {
    outcome = RunReveal(*inst, opt);
  }
  if (!outcome.ok()) return fail(outcome.status());

  report["verdict"] = outcome->violated ? "fail" : "pass";
  report["result"] = std::move(outcome->result);
  if (!outcome->checks.empty()) report["checks"] = std::move(outcome->checks);
  finish(report);
  return outcome->violated ? kExitViolation : kExitOk;
}

}  // namespace distchoice
