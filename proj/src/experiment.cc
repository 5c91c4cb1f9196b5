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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "fqdiff/spectral.h"
#include "fqdiff/varieties.h"

namespace fqdiff {
namespace {

using json = nlohmann::json;

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SpecError(where + "." + key + ": required field is missing");
  }
  return obj.at(key);
}

uint64_t AsUint(const json& value, const std::string& where) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<int64_t>() >= 0)) {
    throw SpecError(where + ": expected a nonnegative integer, got " + value.dump());
  }
  return value.get<uint64_t>();
}

double AsDouble(const json& value, const std::string& where) {
  if (!value.is_number()) {
    throw SpecError(where + ": expected a number, got " + value.dump());
  }
  return value.get<double>();
}

std::string AsString(const json& value, const std::string& where) {
  if (!value.is_string()) {
    throw SpecError(where + ": expected a string, got " + value.dump());
  }
  return value.get<std::string>();
}

std::vector<Elem> AsElems(const json& value, const std::string& where) {
  if (!value.is_array()) throw SpecError(where + ": expected an array");
  std::vector<Elem> out;
  for (size_t i = 0; i < value.size(); ++i) {
    out.push_back(static_cast<Elem>(AsUint(value[i], where + "[" + std::to_string(i) + "]")));
  }
  return out;
}

std::vector<Vec> AsVecs(const json& value, const std::string& where) {
  if (!value.is_array()) throw SpecError(where + ": expected an array of vectors");
  std::vector<Vec> out;
  for (size_t i = 0; i < value.size(); ++i) {
    out.push_back(AsElems(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Integer, or "c*q^e" / "q" / "q^e" / "c*q" with c a ratio; rounded up.
uint64_t ResolveSize(const json& value, uint32_t q, const std::string& where) {
  if (value.is_number()) return AsUint(value, where);
  const std::string text = AsString(value, where);
  const size_t qpos = text.find('q');
  try {
    if (qpos == std::string::npos) {
      const Ratio r = ParseRatio(text);
      if (r.den != 1) throw Error("not an integer");
      return r.num;
    }
    Ratio coeff{1, 1};
    if (qpos > 0) {
      if (text[qpos - 1] != '*') throw Error("expected '*' before q");
      coeff = ParseRatio(text.substr(0, qpos - 1));
    }
    uint64_t exponent = 1;
    const std::string tail = text.substr(qpos + 1);
    if (!tail.empty()) {
      if (tail[0] != '^') throw Error("expected '^' after q");
      const Ratio e = ParseRatio(tail.substr(1));
      if (e.den != 1) throw Error("exponent must be an integer");
      exponent = e.num;
    }
    unsigned __int128 scaled = coeff.num;
    for (uint64_t i = 0; i < exponent; ++i) scaled *= q;
    return static_cast<uint64_t>((scaled + coeff.den - 1) / coeff.den);
  } catch (const Error& e) {
    throw SpecError(where + ": malformed size '" + text + "' (" + e.what() + ")");
  }
}

uint64_t Splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t EffectiveSeed(const json& obj, std::optional<uint64_t> sweep_seed,
                       const std::string& where) {
  if (!obj.contains("seed")) {
    throw SpecError(where + ".seed: random draws need an explicit seed");
  }
  const uint64_t base = AsUint(obj.at("seed"), where + ".seed");
  return sweep_seed ? MixSeed(base, *sweep_seed) : base;
}

PointSet BuildBase(const SpacePtr& space, const json& desc,
                   std::optional<uint64_t> sweep_seed, const std::string& where) {
  const std::string kind = AsString(Require(desc, "kind", where), where + ".kind");
  if (kind == "full") return PointSet::Full(space);
  if (kind == "random") {
    const uint64_t size = ResolveSize(Require(desc, "size", where), space->q(), where + ".size");
    if (size > space->size()) {
      throw SpecError(where + ".size: " + std::to_string(size) + " exceeds |" +
                      space->Name() + "| = " + std::to_string(space->size()));
    }
    return PointSet::Random(space, size, EffectiveSeed(desc, sweep_seed, where));
  }
  if (kind == "sphere") {
    const Elem r = desc.contains("radius")
                       ? static_cast<Elem>(AsUint(desc["radius"], where + ".radius"))
                       : 1;
    return Sphere(space, r);
  }
  if (kind == "paraboloid") return Paraboloid(space);
  if (kind == "variety") {
    const std::string poly = AsString(Require(desc, "poly", where), where + ".poly");
    return VarietyPoints(space, BivarPoly::Parse(space->field_ptr(), poly));
  }
  if (kind == "line") {
    if (desc.contains("vertical")) {
      return LineSet(space, LineSpec::Vertical(static_cast<Elem>(
                                AsUint(desc["vertical"], where + ".vertical"))));
    }
    const Elem slope = desc.contains("slope")
                           ? static_cast<Elem>(AsUint(desc["slope"], where + ".slope"))
                           : 0;
    const Elem intercept =
        desc.contains("intercept")
            ? static_cast<Elem>(AsUint(desc["intercept"], where + ".intercept"))
            : 0;
    return LineSet(space, LineSpec::Graph(slope, intercept));
  }
  if (kind == "subspace") {
    return Subspace(space, AsVecs(Require(desc, "basis", where), where + ".basis"));
  }
  if (kind == "product") {
    return ProductSet(space, AsElems(Require(desc, "s1", where), where + ".s1"),
                      AsElems(Require(desc, "s2", where), where + ".s2"));
  }
  if (kind == "literal") {
    if (desc.contains("points")) {
      return PointSet::FromPoints(space, AsVecs(desc["points"], where + ".points"));
    }
    const std::string path = AsString(Require(desc, "path", where), where + ".path");
    std::ifstream in(path);
    if (!in) throw SpecError(where + ".path: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const PointSet loaded = PointSetFromJson(buf.str());
    if (!loaded.space().SameAs(*space)) {
      throw SpecError(where + ".path: literal lives in " + loaded.space().Name() +
                      ", expected " + space->Name());
    }
    return PointSet::FromIndices(space, loaded.Indices());
  }
  throw SpecError(where + ".kind: unknown set kind '" + kind + "'");
}

const std::vector<std::string> kChecks = {
    "basicD",        "basicD1_identity", "easykey",  "core1",
    "core1_energy_bound", "salem_theorem", "falconer", "decay_bound",
    "bezout",        "salem_constant"};

VerifyConfig ConfigFor(const CheckSpec& check) {
  VerifyConfig config;
  const std::string where = "checks." + check.name;
  const json& p = check.params;
  if (p.contains("threshold")) config.ratio_threshold = AsDouble(p["threshold"], where + ".threshold");
  if (p.contains("salem_threshold")) {
    config.salem_threshold = AsDouble(p["salem_threshold"], where + ".salem_threshold");
  }
  if (p.contains("w_max")) config.w_max = AsUint(p["w_max"], where + ".w_max");
  if (p.contains("tolerance")) {
    config.energy_tolerance = AsDouble(p["tolerance"], where + ".tolerance");
  }
  if (p.contains("brute_force_ops")) {
    config.limits.brute_force_ops = AsUint(p["brute_force_ops"], where + ".brute_force_ops");
  }
  return config;
}

std::string FormatPoint(const Space& s, PointIndex x) {
  std::string out = "(";
  const Vec v = s.Decode(x);
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

VerificationReport RunCheck(const CheckSpec& check, const PointSet& a,
                            const PointSet& b) {
  const VerifyConfig config = ConfigFor(check);
  const json& p = check.params;
  const std::string where = "checks." + check.name;
  const uint64_t k = p.contains("K") ? AsUint(p["K"], where + ".K") : 1;
  if (check.name == "basicD") return CheckBasicD(a, b, config);
  if (check.name == "basicD1_identity") return CheckBasicD1Identity(a, b, config);
  if (check.name == "easykey") {
    const json& c = Require(p, "c", where);
    const Ratio ratio = c.is_string() ? ParseRatio(c.get<std::string>())
                                      : ParseRatio(c.dump());
    return CheckEasyKey(a, ratio, config);
  }
  if (check.name == "core1") return CheckCore1(a, b, k, config);
  if (check.name == "core1_energy_bound") return CheckCore1EnergyBound(a, b, k, config);
  if (check.name == "salem_theorem") return CheckSalemTheorem(a, b, config);
  if (check.name == "falconer") return CheckFalconer(a, b, config);
  if (check.name == "decay_bound") {
    const json& beta = Require(p, "beta", where);
    if (beta.is_string() && beta.get<std::string>() == "salem") {
      // q^beta = C(B) sqrt|B| / q^d, the Salem reading of the decay lemma.
      const SalemResult s = SalemConstant(b);
      const double decay = std::max(s.max_modulus, 1e-300);
      return CheckDecayBound(a, b, std::log(decay) / std::log(double(b.space().q())), config);
    }
    return CheckDecayBound(a, b, AsDouble(beta, where + ".beta"), config);
  }
  if (check.name == "bezout") {
    const uint64_t degree = AsUint(Require(p, "k", where), where + ".k");
    const BezoutCheck bz = BezoutTranslateCheck(b, static_cast<uint32_t>(degree));
    VerificationReport r;
    r.check = "bezout";
    r.lhs = static_cast<double>(bz.bound);
    r.rhs = static_cast<double>(bz.max_intersection);
    r.threshold = 1.0;
    r.constant = r.rhs == 0 ? 0.0 : r.lhs / r.rhs;
    r.pass = bz.pass;
    r.status = bz.pass ? Status::kPass : Status::kFail;
    r.witness = FormatPoint(b.space(), bz.witness);
    r.measured["k"] = static_cast<double>(degree);
    r.measured["max_translate_overlap"] = r.rhs;
    const auto line = ContainsLine(b);
    r.notes = line ? "contains line " + line->ToString() : "contains no line";
    return r;
  }
  if (check.name == "salem_constant") {
    const SalemResult s = SalemConstant(b);
    VerificationReport r;
    r.check = "salem_constant";
    r.lhs = config.salem_threshold;
    r.rhs = s.constant;
    r.threshold = 1.0;
    r.constant = s.constant == 0 ? 0.0 : r.lhs / r.rhs;
    r.pass = r.lhs >= r.rhs;
    r.status = r.pass ? Status::kPass : Status::kFail;
    r.witness = FormatPoint(b.space(), s.witness);
    r.measured["salem_constant"] = s.constant;
    r.measured["max_coefficient"] = s.max_modulus;
    return r;
  }
  throw SpecError(where + ": unknown check");
}

void FillContext(VerificationReport& r, const Space& s, const PointSet& a,
                 const PointSet& b) {
  r.q = s.q();
  r.p = s.field().p();
  r.n = s.field().n();
  r.d = s.d();
  r.card_a = a.card();
  r.card_b = b.card();
}

std::optional<uint64_t> ReportSeed(const ExperimentSpec& spec,
                                   std::optional<uint64_t> sweep_seed) {
  if (sweep_seed) return sweep_seed;
  for (const json* desc : {&spec.set_a, &spec.set_b}) {
    if (desc->is_object() && desc->contains("seed") &&
        desc->at("seed").is_number_unsigned()) {
      return desc->at("seed").get<uint64_t>();
    }
  }
  return std::nullopt;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& KnownChecks() { return kChecks; }

bool IsTheoremGrade(const std::string& check) {
  return check == "basicD" || check == "basicD1_identity" ||
         check == "easykey" || check == "core1_energy_bound";
}

uint64_t MixSeed(uint64_t base, uint64_t sweep_seed) {
  return Splitmix64(Splitmix64(base) ^ sweep_seed);
}

PointSet BuildSet(const SpacePtr& space, const json& descriptor,
                  std::optional<uint64_t> sweep_seed, const std::string& where) {
  if (!descriptor.is_object()) throw SpecError(where + ": expected an object");
  try {
    PointSet set = BuildBase(space, descriptor, sweep_seed, where);
    if (descriptor.contains("subsample")) {
      const json& sub = descriptor["subsample"];
      const std::string w = where + ".subsample";
      const uint64_t size = ResolveSize(Require(sub, "size", w), space->q(), w + ".size");
      if (size > set.card()) {
        throw SpecError(w + ".size: " + std::to_string(size) + " exceeds the " +
                        std::to_string(set.card()) + " available points");
      }
      set = set.Subsample(size, EffectiveSeed(sub, sweep_seed, w));
    }
    return set;
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(where + ": " + e.what());
  }
}

std::string DescribeSet(const json& descriptor, std::optional<uint64_t> sweep_seed) {
  json copy = descriptor;
  if (sweep_seed && copy.is_object()) {
    if (copy.contains("seed") && copy["seed"].is_number_unsigned()) {
      copy["seed"] = MixSeed(copy["seed"].get<uint64_t>(), *sweep_seed);
    }
    if (copy.contains("subsample") && copy["subsample"].contains("seed") &&
        copy["subsample"]["seed"].is_number_unsigned()) {
      copy["subsample"]["seed"] =
          MixSeed(copy["subsample"]["seed"].get<uint64_t>(), *sweep_seed);
    }
  }
  return copy.dump();
}

ExperimentSpec SpecFromJson(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec: expected a JSON object");
  ExperimentSpec spec;
  spec.field = AsString(Require(doc, "field", "spec"), "spec.field");
  const json& d = Require(doc, "d", "spec");
  if (!d.is_number_integer() || d.get<int>() < 1) {
    throw SpecError("spec.d: expected a positive integer, got " + d.dump());
  }
  spec.d = d.get<int>();
  spec.set_a = Require(doc, "setA", "spec");
  if (!spec.set_a.is_object()) throw SpecError("spec.setA: expected an object");
  spec.set_b = doc.contains("setB") ? doc["setB"] : spec.set_a;
  if (!spec.set_b.is_object()) throw SpecError("spec.setB: expected an object");
  const json& checks = Require(doc, "checks", "spec");
  if (!checks.is_array()) throw SpecError("spec.checks: expected an array");
  for (size_t i = 0; i < checks.size(); ++i) {
    const std::string where = "spec.checks[" + std::to_string(i) + "]";
    CheckSpec check;
    if (checks[i].is_string()) {
      check.name = checks[i].get<std::string>();
    } else if (checks[i].is_object()) {
      check.name = AsString(Require(checks[i], "name", where), where + ".name");
      check.params = checks[i];
      check.params.erase("name");
    } else {
      throw SpecError(where + ": expected a check name or object");
    }
    if (std::find(kChecks.begin(), kChecks.end(), check.name) == kChecks.end()) {
      throw SpecError(where + ": unknown check '" + check.name + "'");
    }
    spec.checks.push_back(std::move(check));
  }
  if (doc.contains("output")) spec.output = AsString(doc["output"], "spec.output");
  if (doc.contains("csv")) spec.csv = AsString(doc["csv"], "spec.csv");
  return spec;
}

ExperimentSpec ParseSpec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec is not valid JSON: ") + e.what());
  }
  return SpecFromJson(doc);
}

int RunResult::ExitCode() const {
  if (theorem_failure) return 1;
  if (errors) return 2;
  return 0;
}

RunResult Run(const ExperimentSpec& spec, std::optional<uint64_t> sweep_seed) {
  SpacePtr space;
  try {
    space = Space::Create(Field::Parse(spec.field), spec.d);
  } catch (const Error& e) {
    throw SpecError(std::string("spec.field: ") + e.what());
  }
  const PointSet a = BuildSet(space, spec.set_a, sweep_seed, "setA");
  const PointSet b = BuildSet(space, spec.set_b, sweep_seed, "setB");
  const std::string desc_a = DescribeSet(spec.set_a, sweep_seed);
  const std::string desc_b = DescribeSet(spec.set_b, sweep_seed);
  const std::optional<uint64_t> seed = ReportSeed(spec, sweep_seed);

  RunResult result;
  for (const CheckSpec& check : spec.checks) {
    VerificationReport r;
    try {
      r = RunCheck(check, a, b);
    } catch (const Error& e) {
      r = VerificationReport();
      r.check = check.name;
      r.status = Status::kError;
      r.pass = false;
      r.notes = e.what();
    }
    r.theorem_grade = IsTheoremGrade(check.name);
    FillContext(r, *space, a, b);
    r.set_a = desc_a;
    r.set_b = desc_b;
    r.seed = seed;
    result.theorem_failure |= r.theorem_grade && r.status == Status::kFail;
    result.errors |= r.status == Status::kError;
    result.reports.push_back(std::move(r));
  }
  return result;
}

void WriteJsonLines(const std::vector<VerificationReport>& reports,
                    std::ostream& out) {
  for (const auto& r : reports) out << ReportToJsonLine(r) << '\n';
}

void WriteCsv(const std::vector<VerificationReport>& reports, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    std::string witness = r.witness;
    std::replace(witness.begin(), witness.end(), '"', '\'');
    out << r.q << ',' << r.p << ',' << r.n << ',' << r.d << ','
        << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.check << ','
        << StatusName(r.status) << ',' << (r.pass ? 1 : 0) << ','
        << (r.theorem_grade ? 1 : 0) << ',' << r.card_a << ',' << r.card_b << ','
        << FormatDouble(r.lhs) << ',' << FormatDouble(r.rhs) << ','
        << FormatDouble(r.threshold) << ',' << FormatDouble(r.constant) << ",\""
        << witness << "\"\n";
  }
}

RunResult Sweep(const ExperimentSpec& templ, const SweepOptions& options) {
  const size_t cells = options.fields.size() * options.seeds.size();
  std::vector<RunResult> results(cells);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < cells; i = next++) {
      ExperimentSpec spec = templ;
      spec.field = options.fields[i / options.seeds.size()];
      const uint64_t seed = options.seeds[i % options.seeds.size()];
      try {
        results[i] = Run(spec, seed);
      } catch (const Error& e) {
        VerificationReport r;
        r.check = "cell";
        r.status = Status::kError;
        r.seed = seed;
        r.notes = e.what();
        try {
          const FieldPtr f = Field::Parse(spec.field);
          r.q = f->q();
          r.p = f->p();
          r.n = f->n();
        } catch (const Error&) {
        }
        r.d = spec.d;
        results[i].reports.push_back(std::move(r));
        results[i].errors = true;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(options.parallelism, static_cast<int>(cells)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunResult merged;
  for (auto& cell : results) {
    merged.theorem_failure |= cell.theorem_failure;
    merged.errors |= cell.errors;
    for (auto& r : cell.reports) merged.reports.push_back(std::move(r));
  }
  return merged;
}

std::vector<uint64_t> ParseSeedList(const std::string& text) {
  std::vector<uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw SpecError("malformed seed list entry '" + s + "'");
    }
    return std::stoull(s);
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
    } else {
      const uint64_t lo = number(item.substr(0, dots));
      const uint64_t hi = number(item.substr(dots + 2));
      if (hi < lo) throw SpecError("empty seed range '" + item + "'");
      for (uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    }
  }
  return out;
}

std::vector<std::string> ParseFieldList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace fqdiff
