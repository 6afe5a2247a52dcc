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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "distchoice/instance.h"
#include "distchoice/mechanism.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace distchoice {
namespace {

using json = nlohmann::json;

std::string DataPath(const std::string& name) {
  return std::string(DISTCHOICE_DATA_DIR) + "/" + name;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json Golden() {
  return json::parse(ReadFile(DataPath("floors_ceilings_s5.json")));
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCommand(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<InstanceError> ErrorsOf(const json& doc) {
  std::vector<InstanceError> errors;
  EXPECT_FALSE(ParseInstance(doc.dump(), &errors).ok());
  return errors;
}

bool HasError(const std::vector<InstanceError>& errors,
              InstanceError::Kind kind, const std::string& fragment) {
  for (const InstanceError& e : errors) {
    if (e.kind == kind && e.message.find(fragment) != std::string::npos) {
      return true;
    }
  }
  return false;
}

TEST(InstanceTest, ParsesGoldenFile) {
  absl::StatusOr<Instance> inst =
      LoadInstance(DataPath("floors_ceilings_s5.json"));
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_EQ(inst->ground.size(), 5);
  EXPECT_EQ(inst->ground.Label(3), "s4");
  ASSERT_EQ(inst->schools.size(), 1u);
  const School& c = inst->schools[0].school;
  EXPECT_EQ(c.name, "c");
  EXPECT_EQ(c.capacity, 3);
  ASSERT_TRUE(inst->tau.has_value());
  EXPECT_EQ(inst->tau->Counts(StudentSet::Of({0, 3, 4})),
            (std::vector<int>{2, 1}));
  // Floor 2 and ceiling 3 on t, floor 0 on t_prime: only sets holding both
  // s4 and s5 meet the bounds.
  const StudentSet good = StudentSet::Of({0, 3, 4});
  EXPECT_EQ(*c.preference->Compare(good, StudentSet::Of({1, 3, 4})),
            Comparison::kIndifferent);
  EXPECT_EQ(*c.preference->Compare(good, StudentSet::Of({0, 1, 3})),
            Comparison::kStrictlyBetter);
  EXPECT_EQ(*c.preference->Compare(StudentSet::Of({0, 1, 2}),
                                   StudentSet::Of({0, 1, 3})),
            Comparison::kIndifferent);
  ASSERT_TRUE(inst->student_preferences.has_value());
  EXPECT_TRUE(inst->BuildMarket().ok());
}

TEST(InstanceTest, EmptyStudentListIsDomainError) {
  json doc = Golden();
  doc["students"] = {{"count", 0}};
  EXPECT_TRUE(HasError(ErrorsOf(doc), InstanceError::Kind::kDomain,
                       "student list is empty"));
}

TEST(InstanceTest, FloorAboveCeilingIsDomainError) {
  json doc = Golden();
  doc["schools"][0]["preference"]["bounds"]["t"] = {{"floor", 3},
                                                   {"ceiling", 1}};
  const std::vector<InstanceError> errors = ErrorsOf(doc);
  ASSERT_TRUE(HasError(errors, InstanceError::Kind::kDomain, "r_t ≤ p_t"));
  EXPECT_NE(errors[0].ToString().find("DomainError at schools[0]"),
            std::string::npos);
}

TEST(InstanceTest, UnknownFieldIsSchemaError) {
  json doc = Golden();
  doc["schools"][0]["colour"] = "red";
  EXPECT_TRUE(HasError(ErrorsOf(doc), InstanceError::Kind::kSchema,
                       "unknown field \"colour\""));
}

TEST(InstanceTest, WrongVersionIsSchemaError) {
  json doc = Golden();
  doc["schema_version"] = 2;
  EXPECT_FALSE(ErrorsOf(doc).empty());
}

TEST(InstanceTest, DanglingLabelIsReferenceError) {
  json doc = Golden();
  doc["schools"][0]["priority"][0] = "s9";
  EXPECT_TRUE(
      HasError(ErrorsOf(doc), InstanceError::Kind::kReference, "s9"));
}

TEST(InstanceTest, CollectsEveryError) {
  json doc = Golden();
  doc["schools"][0]["colour"] = "red";
  doc["schools"][0]["priority"][0] = "s9";
  doc["schools"][0]["preference"]["bounds"]["t"] = {{"floor", 3},
                                                   {"ceiling", 1}};
  const std::vector<InstanceError> errors = ErrorsOf(doc);
  EXPECT_TRUE(HasError(errors, InstanceError::Kind::kSchema, "colour"));
  EXPECT_TRUE(HasError(errors, InstanceError::Kind::kReference, "s9"));
  EXPECT_TRUE(HasError(errors, InstanceError::Kind::kDomain, "r_t ≤ p_t"));
}

TEST(InstanceTest, StudentLists) {
  absl::StatusOr<GroundSet> g = GroundSet::Create(3, {"a", "b", "c"});
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(*ParseStudentList(*g, "all"), StudentSet::FirstN(3));
  EXPECT_EQ(*ParseStudentList(*g, "none"), StudentSet());
  EXPECT_EQ(*ParseStudentList(*g, ""), StudentSet());
  EXPECT_EQ(*ParseStudentList(*g, "c,a"), StudentSet::Of({0, 2}));
  EXPECT_FALSE(ParseStudentList(*g, "a,z").ok());
}

TEST(CliTest, ChooseGolden) {
  const CliRun r =
      Cli({"choose", "--instance", DataPath("floors_ceilings_s5.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["verdict"], "pass");
  EXPECT_EQ(report["result"]["chosen"],
            json::array({"s1", "s4", "s5"}));
}

TEST(CliTest, PathIndependenceWitness) {
  const CliRun r = Cli({"verify", "path-independence", "--instance",
                        DataPath("floors_ceilings_s5.json")});
  ASSERT_EQ(r.code, kExitViolation) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["verdict"], "fail");
  bool found = false;
  for (const json& check : report["checks"]) {
    if (check["name"] != "substitutability") continue;
    for (const json& w : check["witnesses"]) {
      if (w["menu"] == json::array({"s1", "s2", "s3", "s4", "s5"}) &&
          w["student"] == "s4" && w["removed"] == "s5") {
        found = true;
      }
    }
  }
  EXPECT_TRUE(found) << r.out;
}

TEST(CliTest, SoftRepairPasses) {
  for (const char* suite : {"path-independence", "structural-properties",
                            "choice-axioms", "matching-axioms"}) {
    const CliRun r = Cli({"verify", suite, "--instance",
                          DataPath("floors_ceilings_s5_soft.json")});
    EXPECT_EQ(r.code, kExitOk) << suite << "\n" << r.out << r.err;
  }
}

TEST(CliTest, DeferredAcceptanceMicroMarket) {
  // By hand: round 1 s1, s2, s4 propose to c1 (s2 has the top value) and s3
  // to c2; round 2 s1 joins s3 at c2 and s4 has exhausted its list.
  const CliRun r =
      Cli({"da", "--instance", DataPath("micro_additive_2x4.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json result = json::parse(r.out)["result"];
  EXPECT_EQ(result["matching"], json::parse(R"({"s1": "c2", "s2": "c1",
                                               "s3": "c2", "s4": null})"));
  EXPECT_EQ(result["rounds"], 2);

  absl::StatusOr<Instance> inst =
      LoadInstance(DataPath("micro_additive_2x4.json"));
  ASSERT_TRUE(inst.ok());
  absl::StatusOr<Market> market = inst->BuildMarket();
  ASSERT_TRUE(market.ok());
  absl::StatusOr<std::vector<Matching>> all =
      EnumerateAxiomaticMatchings(*market);
  ASSERT_TRUE(all.ok());
  ASSERT_EQ(all->size(), 1u);
  EXPECT_EQ((*all)[0].assignment,
            (std::vector<int>{1, 0, 1, kOutsideOption}));
}

TEST(CliTest, IaManipulable) {
  const CliRun ia = Cli({"verify", "strategy-proofness", "--mechanism", "ia",
                         "--instance", DataPath("micro_manipulable_2x3.json")});
  EXPECT_EQ(ia.code, kExitViolation) << ia.out << ia.err;
  const CliRun da = Cli({"verify", "strategy-proofness", "--instance",
                         DataPath("micro_manipulable_2x3.json")});
  EXPECT_EQ(da.code, kExitOk) << da.out << da.err;
}

TEST(CliTest, RevealPlantedCycle) {
  const CliRun r =
      Cli({"reveal", "--instance", DataPath("planted_cycle.json")});
  EXPECT_EQ(r.code, kExitViolation) << r.out << r.err;
  const CliRun soft = Cli({"reveal", "--instance",
                           DataPath("floors_ceilings_s5_soft.json")});
  EXPECT_EQ(soft.code, kExitOk) << soft.out << soft.err;
}

TEST(CliTest, OutputIsDeterministic) {
  for (const std::string format : {"json", "text"}) {
    const std::vector<std::string> args = {
        "--format", format, "verify", "path-independence", "--instance",
        DataPath("floors_ceilings_s5.json")};
    const CliRun first = Cli(args);
    const CliRun second = Cli(args);
    EXPECT_EQ(first.out, second.out);
    EXPECT_FALSE(first.out.empty());
  }
}

TEST(CliTest, BudgetExceededIsInputError) {
  const CliRun subsets = Cli({"--max-subsets", "3", "choose", "--instance",
                              DataPath("floors_ceilings_s5.json")});
  EXPECT_EQ(subsets.code, kExitInputError);
  EXPECT_NE(subsets.err.find("budget exceeded"), std::string::npos);
  const CliRun reports = Cli({"verify", "strategy-proofness", "--max-reports",
                              "3", "--instance",
                              DataPath("micro_additive_2x4.json")});
  EXPECT_EQ(reports.code, kExitInputError);
  EXPECT_EQ(json::parse(reports.out)["verdict"], "error");
}

TEST(CliTest, BadArgumentsAreInputErrors) {
  EXPECT_EQ(Cli({}).code, kExitInputError);
  EXPECT_EQ(Cli({"bogus"}).code, kExitInputError);
  EXPECT_EQ(Cli({"choose"}).code, kExitInputError);
  EXPECT_EQ(Cli({"choose", "--instance", DataPath("missing.json")}).code,
            kExitInputError);
  EXPECT_EQ(Cli({"choose", "--instance", DataPath("floors_ceilings_s5.json"),
                 "--pool", "s1,zz"})
                .code,
            kExitInputError);
  EXPECT_EQ(Cli({"da", "--instance", DataPath("micro_additive_2x4.json"),
                 "--format", "xml"})
                .code,
            kExitInputError);
}

}  // namespace
}  // namespace distchoice
