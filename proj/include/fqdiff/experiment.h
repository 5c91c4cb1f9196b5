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

#ifndef FQDIFF_EXPERIMENT_H_
#define FQDIFF_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fqdiff/pointspace.h"
#include "fqdiff/verify.h"
#include "json.hpp"

namespace fqdiff {

// A malformed experiment spec or set descriptor. The message names the
// offending field (e.g. "setA.size").
class SpecError : public Error {
 public:
  using Error::Error;
};

struct CheckSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

// An experiment document:
//
//   {"field": "13^1", "d": 2,
//    "setA": {"kind": "random", "size": "q", "seed": 1},
//    "setB": {"kind": "sphere", "radius": 1},
//    "checks": ["basicD", {"name": "core1", "K": 2, "threshold": 0.125}],
//    "output": "report.jsonl", "csv": "summary.csv"}
//
// Set kinds: full, random{size, seed}, sphere{radius}, paraboloid,
// variety{poly}, line{slope, intercept | vertical}, subspace{basis},
// product{s1, s2}, literal{points | path}. Any kind takes an optional
// "subsample": {size, seed}. Sizes are integers or "c*q^e" strings (ceil).
struct ExperimentSpec {
  std::string field;
  int d = 2;
  nlohmann::json set_a;
  nlohmann::json set_b;
  std::vector<CheckSpec> checks;
  std::string output;
  std::string csv;
};

// Names accepted in "checks".
const std::vector<std::string>& KnownChecks();
bool IsTheoremGrade(const std::string& check);

ExperimentSpec ParseSpec(const std::string& text);
ExperimentSpec SpecFromJson(const nlohmann::json& doc);

// Combines a descriptor seed with a sweep seed (splitmix64).
uint64_t MixSeed(uint64_t base, uint64_t sweep_seed);

// Builds a set; `where` prefixes diagnostics. With a sweep seed, every
// random draw uses MixSeed(descriptor seed, sweep seed).
PointSet BuildSet(const SpacePtr& space, const nlohmann::json& descriptor,
                  std::optional<uint64_t> sweep_seed = std::nullopt,
                  const std::string& where = "set");

// Descriptor with its effective seeds written in, as compact JSON.
std::string DescribeSet(const nlohmann::json& descriptor,
                        std::optional<uint64_t> sweep_seed);

struct RunResult {
  std::vector<VerificationReport> reports;
  bool theorem_failure = false;
  bool errors = false;

  // 0 when every check ran and no theorem-grade check failed; 1 on a
  // theorem-grade failure; 2 when a check could not run.
  int ExitCode() const;
};

// Runs checks in listed order. Failures to build the space or the sets
// throw; a check that cannot run becomes a kError report.
RunResult Run(const ExperimentSpec& spec,
              std::optional<uint64_t> sweep_seed = std::nullopt);

void WriteJsonLines(const std::vector<VerificationReport>& reports,
                    std::ostream& out);

// Frozen summary schema, one row per report.
inline constexpr const char* kCsvHeader =
    "q,p,n,d,seed,check,status,pass,theorem,cardA,cardB,lhs,rhs,threshold,"
    "constant,witness";
void WriteCsv(const std::vector<VerificationReport>& reports,
              std::ostream& out);

struct SweepOptions {
  std::vector<std::string> fields;  // "p^n" strings or integer orders
  std::vector<uint64_t> seeds;
  int parallelism = 1;
};

// Cross product fields x seeds in that order; each cell runs the template
// with the field replaced. A cell that throws yields a kError report and
// the sweep continues.
RunResult Sweep(const ExperimentSpec& templ, const SweepOptions& options);

// "3,5,7", "0..19" and mixtures ("1,4..6").
std::vector<uint64_t> ParseSeedList(const std::string& text);
std::vector<std::string> ParseFieldList(const std::string& text);

}  // namespace fqdiff

#endif  // FQDIFF_EXPERIMENT_H_
