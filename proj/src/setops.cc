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

#include "fqdiff/setops.h"

#include <cmath>
#include <string>

namespace fqdiff {

PointSet DifferenceSet(const PointSet& a, const PointSet& b) {
  RequireSameSpace(a, b);
  const Space& s = a.space();
  Bits bits(s.size());
  const std::vector<PointIndex> bs = b.Indices();
  a.ForEach([&](PointIndex x) {
    for (PointIndex y : bs) bits.Set(s.Sub(x, y));
  });
  return PointSet::FromIndicator(a.space_ptr(), std::move(bits));
}

std::vector<Elem> DistanceSet(const PointSet& a, const PointSet& b) {
  const PointSet diff = DifferenceSet(a, b);
  const Space& s = a.space();
  std::vector<bool> hit(s.q(), false);
  diff.ForEach([&](PointIndex c) { hit[s.Norm(c)] = true; });
  std::vector<Elem> out;
  for (Elem r = 0; r < s.q(); ++r) {
    if (hit[r]) out.push_back(r);
  }
  return out;
}

uint64_t CorrelationTable::Total() const {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  return total;
}

PointSet CorrelationTable::Support() const {
  Bits bits(counts.size());
  for (size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] != 0) bits.Set(c);
  }
  return PointSet::FromIndicator(space, std::move(bits));
}

uint64_t CorrelationTable::SumOfSquares() const {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c * c;
  return total;
}

CorrelationTable Correlate(const PointSet& a, const PointSet& b) {
  RequireSameSpace(a, b);
  const Space& s = a.space();
  CorrelationTable table{a.space_ptr(), std::vector<uint64_t>(s.size(), 0)};
  const std::vector<PointIndex> bs = b.Indices();
  a.ForEach([&](PointIndex x) {
    for (PointIndex y : bs) ++table.counts[s.Sub(x, y)];
  });
  return table;
}

uint64_t EnergyBrute(const PointSet& a, const PointSet& b,
                     const SetOpsLimits& limits) {
  RequireSameSpace(a, b);
  const long double ops = static_cast<long double>(a.card()) * a.card() * b.card();
  if (ops > static_cast<long double>(limits.brute_force_ops)) {
    throw Error("brute-force energy needs |A|^2|B| = " +
                std::to_string(static_cast<unsigned long long>(ops)) +
                " steps, above the guard " +
                std::to_string(limits.brute_force_ops));
  }
  const Space& s = a.space();
  const std::vector<PointIndex> as = a.Indices();
  const std::vector<PointIndex> bs = b.Indices();
  uint64_t count = 0;
  for (PointIndex x : as) {
    for (PointIndex y : as) {
      const PointIndex x_minus_y = s.Sub(x, y);
      // x - y + z - w = 0  <=>  w = x - y + z.
      for (PointIndex z : bs) count += b.Contains(s.Add(x_minus_y, z));
    }
  }
  return count;
}

uint64_t EnergyCorr(const PointSet& a, const PointSet& b) {
  return Correlate(a, b).SumOfSquares();
}

namespace {

long double SpectralSum(const Spectrum& a, const Spectrum& b) {
  if (!a.space->SameAs(*b.space)) throw Error("spectra from different spaces");
  // Summed in index order for reproducibility.
  long double sum = 0.0L;
  for (size_t m = 0; m < a.values.size(); ++m) {
    sum += static_cast<long double>(std::norm(a.values[m])) *
           std::norm(b.values[m]);
  }
  const long double qd = a.space->size();
  return sum * qd * qd * qd;
}

}  // namespace

double EnergySpectralRaw(const Spectrum& a, const Spectrum& b) {
  return static_cast<double>(SpectralSum(a, b));
}

uint64_t EnergySpectral(const Spectrum& a, const Spectrum& b) {
  const long double value = SpectralSum(a, b);
  const long double rounded = std::round(value);
  if (std::abs(value - rounded) > 0.25L) {
    throw Error("spectral energy " + std::to_string(static_cast<double>(value)) +
                " is not within 0.25 of an integer");
  }
  return static_cast<uint64_t>(rounded);
}

uint64_t EnergySpectral(const PointSet& a, const PointSet& b) {
  RequireSameSpace(a, b);
  return EnergySpectral(DftFast(a), DftFast(b));
}

TranslateProfile ProfileTranslates(const PointSet& b, uint64_t k) {
  if (k < 1) throw Error("translate threshold K must be at least 1");
  const CorrelationTable table = Correlate(b, b);
  TranslateProfile profile;
  profile.threshold = k;
  profile.at_zero = table.counts[0];
  for (PointIndex c = 0; c < table.counts.size(); ++c) {
    const uint64_t count = table.counts[c];
    ++profile.histogram[count];
    if (c == 0) continue;
    if (count > k) profile.exceptional.push_back(c);
    if (count > profile.max_off_zero) {
      profile.max_off_zero = count;
      profile.max_witness = c;
    }
  }
  return profile;
}

void WriteCorrelationCsv(const CorrelationTable& table, std::ostream& out) {
  out << "c,count\n";
  for (size_t c = 0; c < table.counts.size(); ++c) {
    out << c << ',' << table.counts[c] << '\n';
  }
}

void WriteHistogramCsv(const TranslateProfile& profile, std::ostream& out) {
  out << "intersection,frequency\n";
  for (const auto& [count, freq] : profile.histogram) {
    out << count << ',' << freq << '\n';
  }
}

}  // namespace fqdiff
