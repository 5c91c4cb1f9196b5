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

#include "fqdiff/verify.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "fqdiff/spectral.h"
#include "json.hpp"

namespace fqdiff {
namespace {

using u128 = unsigned __int128;

VerificationReport NewReport(std::string name, const PointSet& a,
                             const PointSet* b, double threshold,
                             bool theorem_grade) {
  VerificationReport r;
  r.check = std::move(name);
  const Space& s = a.space();
  r.q = s.q();
  r.p = s.field().p();
  r.n = s.field().n();
  r.d = s.d();
  r.card_a = a.card();
  r.card_b = b ? b->card() : 0;
  r.threshold = threshold;
  r.theorem_grade = theorem_grade;
  return r;
}

// Sets constant and a threshold-based verdict.
void Decide(VerificationReport& r) {
  r.constant = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  r.pass = r.lhs >= r.rhs * r.threshold;
  r.status = r.pass ? Status::kPass : Status::kFail;
}

void Decide(VerificationReport& r, bool pass) {
  r.constant = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  r.pass = pass;
  r.status = pass ? Status::kPass : Status::kFail;
}

void NotApplicable(VerificationReport& r, std::string why) {
  r.constant = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  r.pass = false;
  r.status = Status::kNotApplicable;
  r.notes = std::move(why);
}

std::string FormatPoint(const Space& s, PointIndex x) {
  std::string out = "(";
  const Vec v = s.Decode(x);
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

void RequireNonempty(const PointSet& a, const PointSet& b,
                     const std::string& check) {
  RequireSameSpace(a, b);
  if (a.empty() || b.empty()) {
    throw PreconditionError(check + " needs nonempty A and B");
  }
}

void RequirePlane(const PointSet& a, const std::string& check) {
  if (a.space().d() != 2) {
    throw PreconditionError(check + " is stated for F_q^2, got " +
                            a.space().Name());
  }
}

}  // namespace

const char* StatusName(Status status) {
  switch (status) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kNotApplicable:
      return "not_applicable";
    case Status::kError:
      return "error";
  }
  return "unknown";
}

Ratio ParseRatio(const std::string& text) {
  auto digits_only = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  Ratio r;
  const size_t slash = text.find('/');
  const size_t dot = text.find('.');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) {
      throw Error("malformed ratio '" + text + "'");
    }
    r = {std::stoull(num), std::stoull(den)};
  } else if (dot != std::string::npos) {
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (!(whole.empty() || digits_only(whole)) || !digits_only(frac) ||
        frac.size() > 18) {
      throw Error("malformed ratio '" + text + "'");
    }
    uint64_t den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = {std::stoull(whole.empty() ? "0" : whole) * den + std::stoull(frac), den};
  } else {
    if (!digits_only(text)) throw Error("malformed ratio '" + text + "'");
    r = {std::stoull(text), 1};
  }
  if (r.den == 0) throw Error("ratio '" + text + "' has zero denominator");
  const uint64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string ReportToJsonLine(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["status"] = StatusName(r.status);
  j["pass"] = r.pass;
  j["theorem"] = r.theorem_grade;
  j["q"] = r.q;
  j["p"] = r.p;
  j["n"] = r.n;
  j["d"] = r.d;
  j["cardA"] = r.card_a;
  j["cardB"] = r.card_b;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["threshold"] = r.threshold;
  j["constant"] = r.constant;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["witness"] = r.witness;
  j["setA"] = r.set_a;
  j["setB"] = r.set_b;
  nlohmann::ordered_json measured = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.measured) {
    if (std::isfinite(value)) {
      measured[name] = value;
    } else {
      measured[name] = value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    }
  }
  j["measured"] = std::move(measured);
  j["notes"] = r.notes;
  return j.dump();
}

VerificationReport CheckBasicD(const PointSet& a, const PointSet& b,
                               const VerifyConfig&) {
  RequireNonempty(a, b, "basicD");
  VerificationReport r = NewReport("basicD", a, &b, 1.0, true);
  const uint64_t diff = DifferenceSet(a, b).card();
  const uint64_t energy = EnergyCorr(a, b);
  const u128 ab = u128{a.card()} * b.card();
  r.lhs = static_cast<double>(diff);
  r.rhs = static_cast<double>(ab * ab) / static_cast<double>(energy);
  r.measured["|A-B|"] = static_cast<double>(diff);
  r.measured["Lambda"] = static_cast<double>(energy);
  Decide(r, u128{diff} * energy >= ab * ab);
  if (u128{diff} * energy == ab * ab) r.notes = "equality";
  return r;
}

VerificationReport CheckBasicD1Identity(const PointSet& a, const PointSet& b,
                                        const VerifyConfig& config) {
  RequireNonempty(a, b, "basicD1_identity");
  VerificationReport r = NewReport("basicD1_identity", a, &b, 1.0, true);
  const uint64_t corr = EnergyCorr(a, b);
  const Spectrum sa = DftFast(a);
  const Spectrum sb = DftFast(b);
  const double raw = EnergySpectralRaw(sa, sb);
  const double rounded = std::round(raw);
  r.measured["Lambda_corr"] = static_cast<double>(corr);
  r.measured["Lambda_spectral_raw"] = raw;
  bool agree = std::abs(raw - rounded) <= config.energy_tolerance &&
               rounded == static_cast<double>(corr);
  const long double ops =
      static_cast<long double>(a.card()) * a.card() * b.card();
  if (ops <= static_cast<long double>(config.limits.brute_force_ops)) {
    const uint64_t brute = EnergyBrute(a, b, config.limits);
    r.measured["Lambda_brute"] = static_cast<double>(brute);
    agree = agree && brute == corr;
  } else {
    r.notes = "brute-force energy skipped (guard)";
  }
  // The (basicD1) denominator equals the (basicD) one exactly when the
  // identity holds; both are reported.
  r.lhs = rounded;
  r.rhs = static_cast<double>(corr);
  r.measured["rounding_error"] = std::abs(raw - rounded);
  Decide(r, agree);
  return r;
}

VerificationReport CheckEasyKey(const PointSet& e, Ratio c,
                                const VerifyConfig&) {
  RequirePlane(e, "easykey");
  if (c.num == 0 || c.num > c.den) {
    throw PreconditionError("easykey needs c in (0, 1]");
  }
  const Space& s = e.space();
  const uint64_t q = s.q();
  if (u128{e.card()} * c.den < u128{c.num} * q * q) {
    throw PreconditionError("easykey needs |E| >= c q^2: |E| = " +
                            std::to_string(e.card()) + ", c q^2 = " +
                            std::to_string(c.value() * q * q));
  }
  VerificationReport r = NewReport("easykey", e, nullptr, 1.0, true);
  std::vector<bool> norms(q, false);
  std::vector<uint64_t> column(q, 0);
  e.ForEach([&](PointIndex x) {
    norms[s.Norm(x)] = true;
    ++column[s.Coord(x, 0)];
  });
  uint64_t distinct = 0;
  for (bool hit : norms) distinct += hit;
  // Pigeonhole witness: the fullest vertical line.
  Elem best = 0;
  for (Elem a = 0; a < q; ++a) {
    if (column[a] > column[best]) best = a;
  }
  std::vector<bool> line_norms(q, false);
  e.ForEach([&](PointIndex x) {
    if (s.Coord(x, 0) == best) line_norms[s.Norm(x)] = true;
  });
  uint64_t on_line = 0;
  for (bool hit : line_norms) on_line += hit;

  r.lhs = static_cast<double>(distinct);
  r.rhs = c.value() * q / 2.0;
  r.measured["c"] = c.value();
  r.measured["distinct_norms"] = static_cast<double>(distinct);
  r.measured["max_vertical_line"] = static_cast<double>(column[best]);
  r.measured["norms_on_that_line"] = static_cast<double>(on_line);
  r.witness = "x1=" + std::to_string(best);
  Decide(r, u128{2} * distinct * c.den >= u128{c.num} * q);
  return r;
}

VerificationReport CheckCore1(const PointSet& a, const PointSet& b, uint64_t k,
                              const VerifyConfig& config) {
  RequireNonempty(a, b, "core1");
  RequirePlane(a, "core1");
  VerificationReport r =
      NewReport("core1", a, &b, config.ratio_threshold, false);
  const TranslateProfile profile = ProfileTranslates(b, k);
  const uint64_t ab = a.card() * b.card();
  const uint64_t bb = b.card() * b.card();
  r.rhs = static_cast<double>(std::min(ab, bb));
  r.measured["K"] = static_cast<double>(k);
  r.measured["|W|"] = static_cast<double>(profile.exceptional.size());
  r.measured["max_translate_overlap"] = static_cast<double>(profile.max_off_zero);
  if (profile.exceptional.size() > config.w_max) {
    r.witness = FormatPoint(b.space(), profile.exceptional.front());
    NotApplicable(r, "translate profile has |W| = " +
                         std::to_string(profile.exceptional.size()) + " > " +
                         std::to_string(config.w_max));
    return r;
  }
  const uint64_t diff = DifferenceSet(a, b).card();
  r.lhs = static_cast<double>(diff);
  r.measured["|A-B|"] = static_cast<double>(diff);
  Decide(r);
  return r;
}

VerificationReport CheckCore1EnergyBound(const PointSet& a, const PointSet& b,
                                         uint64_t k, const VerifyConfig&) {
  RequireNonempty(a, b, "core1_energy_bound");
  VerificationReport r = NewReport("core1_energy_bound", a, &b, 1.0, true);
  const TranslateProfile profile = ProfileTranslates(b, k);
  const uint64_t w = profile.CoveringSize();
  const uint64_t energy = EnergyCorr(a, b);
  const u128 bound = u128{k} * a.card() * a.card() + u128{w} * a.card() * b.card();
  r.lhs = static_cast<double>(bound);
  r.rhs = static_cast<double>(energy);
  r.measured["K"] = static_cast<double>(k);
  r.measured["|W|"] = static_cast<double>(w);
  r.measured["|W\\{0}|"] = static_cast<double>(profile.exceptional.size());
  r.measured["Lambda"] = static_cast<double>(energy);
  Decide(r, bound >= energy);
  return r;
}

VerificationReport CheckSalemTheorem(const PointSet& a, const PointSet& b,
                                     const VerifyConfig& config) {
  RequireNonempty(a, b, "salem_theorem");
  VerificationReport r =
      NewReport("salem_theorem", a, &b, config.ratio_threshold, false);
  const Space& s = b.space();
  const double qd = s.size();
  const SalemResult salem = SalemConstant(b);
  r.rhs = qd;
  r.measured["salem_constant"] = salem.constant;
  r.witness = FormatPoint(s, salem.witness);
  if (salem.constant > config.salem_threshold) {
    NotApplicable(r, "B is not Salem at threshold " +
                         std::to_string(config.salem_threshold));
    return r;
  }
  const double ab = static_cast<double>(a.card()) * b.card();
  if (ab < qd) {
    NotApplicable(r, "|A||B| < q^d");
    return r;
  }
  // q^beta = C(B) sqrt|B| / q^d.
  const double decay = salem.constant * std::sqrt(static_cast<double>(b.card())) / qd;
  const double beta = decay > 0 ? std::log(decay) / std::log(double(s.q()))
                                : -std::numeric_limits<double>::infinity();
  const double lemma = decay > 0 ? ab * b.card() / (qd * qd * decay * decay)
                                 : std::numeric_limits<double>::infinity();
  const uint64_t diff = DifferenceSet(a, b).card();
  r.lhs = static_cast<double>(diff);
  r.measured["|A-B|"] = r.lhs;
  r.measured["beta"] = beta;
  r.measured["predicted_ratio"] = std::min(qd, lemma) / qd;
  Decide(r);
  return r;
}

VerificationReport CheckFalconer(const PointSet& a, const PointSet& b,
                                 const VerifyConfig& config) {
  RequireNonempty(a, b, "falconer");
  VerificationReport r =
      NewReport("falconer", a, &b, config.ratio_threshold, false);
  const Space& s = a.space();
  const std::vector<Elem> dist = DistanceSet(a, b);
  r.lhs = static_cast<double>(dist.size());
  r.rhs = s.q();
  const double ab_ratio = static_cast<double>(a.card()) * b.card() / s.size();
  r.measured["|Delta|"] = r.lhs;
  r.measured["|A||B|/q^d"] = ab_ratio;
  r.notes = ab_ratio >= 1.0 ? "conjecture hypothesis |A||B| >= q^d met"
                            : "conjecture hypothesis |A||B| >= q^d not met";
  Decide(r);
  return r;
}

VerificationReport CheckDecayBound(const PointSet& a, const PointSet& b,
                                   double beta, const VerifyConfig& config) {
  RequireNonempty(a, b, "decay_bound");
  VerificationReport r =
      NewReport("decay_bound", a, &b, config.ratio_threshold, false);
  const Space& s = b.space();
  const double qd = s.size();
  const SalemResult top = MaxNonzeroCoefficient(DftFast(b));
  const double allowed = std::pow(static_cast<double>(s.q()), beta);
  r.measured["beta"] = beta;
  r.measured["max_coefficient"] = top.max_modulus;
  r.measured["q^beta"] = allowed;
  r.rhs = std::min(qd, static_cast<double>(a.card()) * b.card() * b.card() /
                           (qd * qd * allowed * allowed));
  if (top.max_modulus > allowed * (1.0 + 1e-9) + 1e-12) {
    r.witness = FormatPoint(s, top.witness);
    NotApplicable(r, "decay hypothesis fails at the witness frequency");
    return r;
  }
  const uint64_t diff = DifferenceSet(a, b).card();
  r.lhs = static_cast<double>(diff);
  r.measured["|A-B|"] = r.lhs;
  Decide(r);
  return r;
}

}  // namespace fqdiff
