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

#ifndef FQDIFF_SETOPS_H_
#define FQDIFF_SETOPS_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "fqdiff/pointspace.h"
#include "fqdiff/spectral.h"

namespace fqdiff {

struct SetOpsLimits {
  // Ceiling on |A|^2 |B| for the brute-force energy count.
  uint64_t brute_force_ops = 100'000'000;
};

// A - B = {a - b : a in A, b in B}.
PointSet DifferenceSet(const PointSet& a, const PointSet& b);

// {||a - b|| : a in A, b in B}, sorted.
std::vector<Elem> DistanceSet(const PointSet& a, const PointSet& b);

// counts[c] = |A cap (B + c)| = #{(a, b) : a - b = c}.
struct CorrelationTable {
  SpacePtr space;
  std::vector<uint64_t> counts;

  uint64_t Total() const;
  PointSet Support() const;
  uint64_t SumOfSquares() const;
};

CorrelationTable Correlate(const PointSet& a, const PointSet& b);

// Lambda(A, B) = #{(x, y, z, w) in A x A x B x B : x - y + z - w = 0}.
//
// Three independent routes. EnergyBrute enumerates (x, y, z) and tests the
// forced w; EnergyCorr sums squared correlation counts; EnergySpectral
// evaluates q^{3d} sum_m |A^(m)|^2 |B^(m)|^2 and rounds, throwing Error
// when the value is more than 0.25 from an integer.
uint64_t EnergyBrute(const PointSet& a, const PointSet& b,
                     const SetOpsLimits& limits = {});
uint64_t EnergyCorr(const PointSet& a, const PointSet& b);
uint64_t EnergySpectral(const PointSet& a, const PointSet& b);
uint64_t EnergySpectral(const Spectrum& a, const Spectrum& b);
// The unrounded q^{3d} sum_m |A^(m)|^2 |B^(m)|^2.
double EnergySpectralRaw(const Spectrum& a, const Spectrum& b);

// Default energy route (correlation).
inline uint64_t Energy(const PointSet& a, const PointSet& b) {
  return EnergyCorr(a, b);
}

struct TranslateProfile {
  uint64_t threshold = 0;  // K
  // W = {c != 0 : |B cap (B + c)| > K}, increasing index order.
  std::vector<PointIndex> exceptional;
  // |B cap (B + c)| -> number of c attaining it, over all c (c = 0 included).
  std::map<uint64_t, uint64_t> histogram;
  // max_{c != 0} |B cap (B + c)| and a c attaining it.
  uint64_t max_off_zero = 0;
  PointIndex max_witness = 0;
  // |B cap B| = |B|.
  uint64_t at_zero = 0;

  // Size of the exceptional set needed for "count <= K off the set" to hold
  // at every c, i.e. |W| plus one when the c = 0 term |B| exceeds K.
  uint64_t CoveringSize() const {
    return exceptional.size() + (at_zero > threshold ? 1 : 0);
  }
};

// Throws Error for K < 1.
TranslateProfile ProfileTranslates(const PointSet& b, uint64_t k);

void WriteCorrelationCsv(const CorrelationTable& table, std::ostream& out);
void WriteHistogramCsv(const TranslateProfile& profile, std::ostream& out);

}  // namespace fqdiff

#endif  // FQDIFF_SETOPS_H_
