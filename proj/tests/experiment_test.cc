// Copyright 2026 The fqdiff Authors.
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

#include "fqdiff/experiment.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace fqdiff {
namespace {

std::string Csv(const RunResult& r) {
  std::ostringstream out;
  WriteCsv(r.reports, out);
  return out.str();
}

std::string JsonLines(const RunResult& r) {
  std::ostringstream out;
  WriteJsonLines(r.reports, out);
  return out.str();
}

size_t Lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(SpecTest, FullSpaceBasicD) {
  const RunResult r = fqdiff::Run(ParseSpec(
      R"({"field":"5^1","d":2,"setA":{"kind":"full"},"setB":{"kind":"full"},
          "checks":["basicD"]})"));
  ASSERT_EQ(r.reports.size(), 1u);
  EXPECT_EQ(r.reports[0].status, Status::kPass);
  EXPECT_EQ(r.reports[0].lhs, 25.0);
  EXPECT_EQ(r.reports[0].rhs, 25.0);
  EXPECT_EQ(r.ExitCode(), 0);
}

TEST(SpecTest, CirclePipeline) {
  const RunResult r = fqdiff::Run(ParseSpec(
      R"({"field":"13^1","d":2,"setA":{"kind":"random","size":13,"seed":1},
          "setB":{"kind":"sphere","radius":1},
          "checks":[{"name":"core1","K":2},"falconer","core1_energy_bound"]})"));
  ASSERT_EQ(r.reports.size(), 3u);
  EXPECT_EQ(r.reports[0].check, "core1");
  EXPECT_EQ(r.reports[0].status, Status::kPass);
  EXPECT_EQ(r.reports[1].check, "falconer");
  EXPECT_GT(r.reports[1].constant, 0.0);
  EXPECT_EQ(r.reports[0].seed, 1u);
  EXPECT_EQ(r.reports[0].card_a, 13u);
  EXPECT_EQ(r.reports[0].card_b, 12u);
  EXPECT_EQ(r.ExitCode(), 0);
}

TEST(SpecTest, RejectsMalformedSpecs) {
  auto field_error = [](const std::string& text) {
    try {
      fqdiff::Run(ParseSpec(text));
    } catch (const SpecError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(field_error(R"({"field":"6^1","d":2,"setA":{"kind":"full"},"checks":[]})")
                .find("spec.field"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"field":"5^1","d":2,"setA":{"kind":"random","size":3},"checks":[]})")
                .find("setA.seed"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"field":"5^1","d":2,"setA":{"kind":"blob"},"checks":[]})")
                .find("setA.kind"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"field":"5^1","d":2,"setA":{"kind":"random","size":99,"seed":1},"checks":[]})")
                .find("setA.size"),
            std::string::npos);
  EXPECT_THROW(ParseSpec(R"({"field":"5^1","d":2,"setA":{"kind":"full"},"checks":["nope"]})"),
               SpecError);
  EXPECT_THROW(ParseSpec(R"({"field":"5^1","setA":{"kind":"full"},"checks":[]})"), SpecError);
  try {
    ParseSpec("{\n  \"field\": \"5^1\",\n  oops\n}");
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(SpecTest, CheckErrorsBecomeErrorReports) {
  const RunResult r = fqdiff::Run(ParseSpec(
      R"({"field":"7^1","d":2,"setA":{"kind":"random","size":5,"seed":3},
          "checks":[{"name":"easykey","c":"1/2"},"basicD"]})"));
  ASSERT_EQ(r.reports.size(), 2u);
  EXPECT_EQ(r.reports[0].status, Status::kError);
  EXPECT_NE(r.reports[0].notes.find("c q^2"), std::string::npos);
  EXPECT_EQ(r.reports[1].status, Status::kPass);
  EXPECT_EQ(r.ExitCode(), 2);
}

TEST(SpecTest, SetKinds) {
  auto space = Space::Create(Field::ForOrder(7), 2);
  using nlohmann::json;
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"paraboloid"})")).card(), 7u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"sphere","radius":0})")).card(), 1u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"variety","poly":"x1*x2"})")).card(), 13u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"line","vertical":2})")).card(), 7u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"line","slope":3,"intercept":1})")).card(), 7u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"subspace","basis":[[1,2]]})")).card(), 7u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"product","s1":[1,2],"s2":[0,3,4]})")).card(), 6u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"literal","points":[[1,1],[2,2],[1,1]]})")).card(), 2u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"random","size":"q","seed":4})")).card(), 7u);
  EXPECT_EQ(BuildSet(space, json::parse(R"({"kind":"random","size":"1/4*q^2","seed":4})")).card(), 13u);
  EXPECT_EQ(BuildSet(space, json::parse(
                R"({"kind":"full","subsample":{"size":"2*q","seed":9}})")).card(), 14u);
  EXPECT_THROW(BuildSet(space, json::parse(R"({"kind":"full","subsample":{"size":3}})")), SpecError);
  EXPECT_THROW(BuildSet(space, json::parse(R"({"kind":"random","size":"q^x","seed":1})")), SpecError);
  EXPECT_THROW(BuildSet(space, json::parse(R"({"kind":"subspace","basis":[[1,2],[2,4]]})")), SpecError);
}

TEST(SpecTest, LiteralFromFile) {
  auto space = Space::Create(Field::ForOrder(5), 2);
  const PointSet a = PointSet::Random(space, 6, 1);
  const std::string path =
      (std::filesystem::temp_directory_path() / "fqdiff_literal_test.json").string();
  {
    std::ofstream out(path);
    out << PointSetToJson(a);
  }
  nlohmann::json desc = {{"kind", "literal"}, {"path", path}};
  EXPECT_EQ(BuildSet(space, desc), a);
  auto other = Space::Create(Field::ForOrder(7), 2);
  EXPECT_THROW(BuildSet(other, desc), SpecError);
  std::remove(path.c_str());
}

TEST(SweepTest, BasicDOverFieldsAndSeeds) {
  const ExperimentSpec templ = ParseSpec(
      R"({"field":"3^1","d":2,"setA":{"kind":"random","size":"q","seed":1},
          "setB":{"kind":"random","size":"2*q","seed":2},"checks":["basicD"]})");
  SweepOptions options;
  options.fields = ParseFieldList("3,5,7,11,13");
  options.seeds = ParseSeedList("0..19");
  const RunResult r = Sweep(templ, options);
  ASSERT_EQ(r.reports.size(), 100u);
  for (const auto& rep : r.reports) EXPECT_TRUE(rep.pass);
  EXPECT_EQ(r.reports[0].q, 3u);
  EXPECT_EQ(r.reports[99].q, 13u);
  EXPECT_EQ(r.reports[99].seed, 19u);
  EXPECT_EQ(Lines(Csv(r)), 101u);
  EXPECT_EQ(r.ExitCode(), 0);
}

TEST(SweepTest, SalemConstantOfParaboloids) {
  const ExperimentSpec templ = ParseSpec(
      R"({"field":"3^1","d":2,"setA":{"kind":"paraboloid"},"checks":["salem_constant"]})");
  SweepOptions options;
  options.fields = ParseFieldList("3,5,7,9,11,13");
  options.seeds = {0};
  const RunResult r = Sweep(templ, options);
  ASSERT_EQ(r.reports.size(), 6u);
  for (const auto& rep : r.reports) EXPECT_NEAR(rep.rhs, 1.0, 1e-9) << rep.q;
}

TEST(SweepTest, EmptyFieldListGivesHeaderOnly) {
  const ExperimentSpec templ = ParseSpec(
      R"({"field":"3^1","d":2,"setA":{"kind":"full"},"checks":["basicD"]})");
  SweepOptions options;
  options.seeds = {0, 1};
  EXPECT_EQ(Csv(Sweep(templ, options)), std::string(kCsvHeader) + "\n");
}

TEST(SweepTest, DeterministicAndParallelSafe) {
  const ExperimentSpec templ = ParseSpec(
      R"({"field":"3^1","d":2,"setA":{"kind":"random","size":"q","seed":1},
          "setB":{"kind":"paraboloid"},
          "checks":["basicD","basicD1_identity","salem_theorem","falconer"]})");
  SweepOptions options;
  options.fields = ParseFieldList("5,7,9,11");
  options.seeds = ParseSeedList("0..5");
  const std::string serial = JsonLines(Sweep(templ, options));
  EXPECT_EQ(serial, JsonLines(Sweep(templ, options)));
  options.parallelism = 4;
  EXPECT_EQ(serial, JsonLines(Sweep(templ, options)));
}

TEST(SweepTest, BadCellIsRecordedAndSweepContinues) {
  const ExperimentSpec templ = ParseSpec(
      R"({"field":"3^1","d":2,"setA":{"kind":"random","size":"q^2","seed":1},
          "checks":["basicD"]})");
  SweepOptions options;
  options.fields = {"5", "6", "7"};
  options.seeds = {0};
  const RunResult r = Sweep(templ, options);
  ASSERT_EQ(r.reports.size(), 3u);
  EXPECT_EQ(r.reports[1].status, Status::kError);
  EXPECT_EQ(r.reports[2].status, Status::kPass);
  EXPECT_EQ(r.ExitCode(), 2);
}

TEST(SweepTest, SeedMixingSeparatesSets) {
  EXPECT_NE(MixSeed(1, 0), MixSeed(2, 0));
  EXPECT_NE(MixSeed(1, 0), MixSeed(1, 1));
  EXPECT_EQ(MixSeed(5, 7), MixSeed(5, 7));
}

TEST(ListParsingTest, Seeds) {
  EXPECT_EQ(ParseSeedList("1,4..6"), (std::vector<uint64_t>{1, 4, 5, 6}));
  EXPECT_TRUE(ParseSeedList("").empty());
  EXPECT_THROW(ParseSeedList("a"), SpecError);
  EXPECT_THROW(ParseSeedList("5..2"), SpecError);
  EXPECT_EQ(ParseFieldList("3^2,5"), (std::vector<std::string>{"3^2", "5"}));
}

}  // namespace
}  // namespace fqdiff
