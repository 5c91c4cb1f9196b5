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

#ifndef FQDIFF_VERIFY_H_
#define FQDIFF_VERIFY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "fqdiff/pointspace.h"
#include "fqdiff/setops.h"

namespace fqdiff {

// A check was asked to run on inputs outside its hypothesis in a way that
// indicates a malformed request (as opposed to "not applicable").
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// kError marks a check that could not run (bad parameters or inputs).
enum class Status { kPass, kFail, kNotApplicable, kError };

const char* StatusName(Status status);

// Exact rational in (0, 1] for density parameters.
struct Ratio {
  uint64_t num = 1;
  uint64_t den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

// Parses "a/b", an integer, or a decimal literal (decimals are converted
// exactly from their digits, so "0.25" is 1/4).
Ratio ParseRatio(const std::string& text);

struct VerifyConfig {
  // Empirical ratio threshold for the asymptotic (>~) claims.
  double ratio_threshold = 1.0 / 8;
  // Largest Salem constant accepted as "B is a Salem set".
  double salem_threshold = 2.0;
  // Largest exceptional translate set accepted as "|W| ~ 1".
  uint64_t w_max = 4;
  // Rounding tolerance for the spectral energy identity.
  double energy_tolerance = 0.25;
  SetOpsLimits limits;
};

// One verification outcome. pass <=> status == kPass <=> applicable and
// lhs >= rhs * threshold.
struct VerificationReport {
  std::string check;
  uint32_t q = 0;
  uint32_t p = 0;
  uint32_t n = 0;
  int d = 0;
  uint64_t card_a = 0;
  uint64_t card_b = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double threshold = 1.0;
  // lhs / rhs, 0 when rhs == 0.
  double constant = 0.0;
  Status status = Status::kFail;
  bool pass = false;
  // Theorem-grade checks encode inequalities with explicit constants; any
  // failure of one is a bug.
  bool theorem_grade = false;
  std::map<std::string, double> measured;
  std::string witness;
  std::string notes;
  // Filled by the experiment layer.
  std::string set_a;
  std::string set_b;
  std::optional<uint64_t> seed;
};

// JSON object with the stable field names check, q, p, n, d, cardA, cardB,
// lhs, rhs, constant, pass, seed, witness (plus status, threshold, theorem,
// measured, setA, setB, notes).
std::string ReportToJsonLine(const VerificationReport& report);

// |A - B| >= |A|^2 |B|^2 / Lambda(A, B), compared exactly.
VerificationReport CheckBasicD(const PointSet& a, const PointSet& b,
                               const VerifyConfig& config = {});

// Lambda by brute force (when within the guard), correlation, and
// q^{3d} sum |A^|^2 |B^|^2 agree after rounding at config.energy_tolerance.
VerificationReport CheckBasicD1Identity(const PointSet& a, const PointSet& b,
                                        const VerifyConfig& config = {});

// |E| >= c q^2 in F_q^2 implies |{||x|| : x in E}| >= c q / 2. Throws
// PreconditionError when |E| < c q^2, c is outside (0, 1] or d != 2.
VerificationReport CheckEasyKey(const PointSet& e, Ratio c,
                                const VerifyConfig& config = {});

// |A - B| against min(|A||B|, |B|^2) when B's translate profile at K has
// at most w_max exceptional translates; not applicable otherwise.
VerificationReport CheckCore1(const PointSet& a, const PointSet& b, uint64_t k,
                              const VerifyConfig& config = {});

// Lambda(A, B) <= K |A|^2 + |W| |A| |B| where W is every translate (c = 0
// included) with |B cap (B + c)| > K. Theorem-grade.
VerificationReport CheckCore1EnergyBound(const PointSet& a, const PointSet& b,
                                         uint64_t k,
                                         const VerifyConfig& config = {});

// |A - B| / q^d for Salem B with |A||B| >= q^d, with the decay-lemma
// prediction at q^beta = C(B) sqrt|B| / q^d.
VerificationReport CheckSalemTheorem(const PointSet& a, const PointSet& b,
                                     const VerifyConfig& config = {});

// |Delta(A, B)| / q against the ratio threshold.
VerificationReport CheckFalconer(const PointSet& a, const PointSet& b,
                                 const VerifyConfig& config = {});

// max_{m != 0} |B^(m)| <= q^beta implies
// |A - B| >~ min(q^d, |A||B|^2 / q^{2d + 2 beta}).
VerificationReport CheckDecayBound(const PointSet& a, const PointSet& b,
                                   double beta,
                                   const VerifyConfig& config = {});

}  // namespace fqdiff

#endif  // FQDIFF_VERIFY_H_
