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

#include "fqdiff/spectral.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"

namespace fqdiff {
namespace {

SpacePtr MakeSpace(uint32_t q, int d) {
  return Space::Create(Field::ForOrder(q), d);
}

double MaxAbsDiff(const Spectrum& a, const Spectrum& b) {
  double worst = 0.0;
  for (size_t m = 0; m < a.values.size(); ++m) {
    worst = std::max(worst, std::abs(a.values[m] - b.values[m]));
  }
  return worst;
}

PointSet Parabola(const SpacePtr& s) {
  std::vector<Vec> pts;
  const Field& f = s->field();
  for (Elem t = 0; t < f.q(); ++t) pts.push_back({t, f.Mul(t, t)});
  return PointSet::FromPoints(s, pts);
}

TEST(SpectralTest, FullSpaceIsADelta) {
  auto s = MakeSpace(5, 2);
  for (const Spectrum& sp : {DftNaive(PointSet::Full(s)), DftFast(PointSet::Full(s))}) {
    EXPECT_NEAR(std::abs(sp[0] - 1.0), 0.0, 1e-12);
    for (PointIndex m = 1; m < s->size(); ++m) EXPECT_NEAR(std::abs(sp[m]), 0.0, 1e-12);
  }
}

TEST(SpectralTest, OriginIsFlat) {
  auto s = MakeSpace(7, 2);
  const std::vector<PointIndex> origin = {0};
  const Spectrum sp = DftNaive(PointSet::FromIndices(s, origin));
  for (const auto& v : sp.values) EXPECT_NEAR(std::abs(v - 1.0 / 49), 0.0, 1e-15);
}

TEST(SpectralTest, CoordinateLineSpectrum) {
  // E = F_q x {0}: E^(m) = q^-2 sum_t chi(-t m_1), which is 1/q when m_1 = 0.
  const uint32_t q = 7;
  auto s = MakeSpace(q, 2);
  std::vector<Vec> pts;
  for (Elem t = 0; t < q; ++t) pts.push_back({t, 0});
  const PointSet e = PointSet::FromPoints(s, pts);
  const Spectrum sp = DftNaive(e);
  for (PointIndex m = 0; m < s->size(); ++m) {
    const double expected = s->Coord(m, 0) == 0 ? 1.0 / q : 0.0;
    EXPECT_NEAR(std::abs(sp[m]), expected, 1e-12) << m;
  }
  EXPECT_LT(MaxAbsDiff(sp, DftFast(e)), 1e-12);
  EXPECT_NEAR(SalemConstant(e).constant, std::sqrt(double(q)), 1e-9);
}

TEST(SpectralTest, FastMatchesNaiveOnRandomSets) {
  for (uint32_t q : {5u, 9u, 4u, 8u}) {
    auto s = MakeSpace(q, 2);
    for (uint64_t seed = 0; seed < 12; ++seed) {
      const PointSet e = PointSet::Random(s, 1 + seed * 3 % s->size(), seed);
      EXPECT_LT(MaxAbsDiff(DftNaive(e), DftFast(e)), 1e-9) << q << " " << seed;
    }
  }
}

TEST(SpectralTest, FastMatchesNaiveOnExtensionFieldLine) {
  auto s = MakeSpace(9, 1);
  for (uint64_t seed = 0; seed < 9; ++seed) {
    const PointSet e = PointSet::Random(s, seed + 1, seed);
    EXPECT_LT(MaxAbsDiff(DftNaive(e), DftFast(e)), 1e-9);
  }
  auto s27 = MakeSpace(27, 1);
  const PointSet e = PointSet::Random(s27, 10, 3);
  EXPECT_LT(MaxAbsDiff(DftNaive(e), DftFast(e)), 1e-9);
}

TEST(SpectralTest, ZeroCoefficientCountsPoints) {
  auto s = MakeSpace(5, 3);
  const PointSet e = PointSet::Random(s, 37, 2);
  EXPECT_EQ(DftFast(e).ZeroCoefficientCount(), 37u);
  EXPECT_EQ(DftNaive(e).ZeroCoefficientCount(), 37u);
}

TEST(SpectralTest, TranslateOnlyChangesPhase) {
  auto s = MakeSpace(7, 2);
  const PointSet e = PointSet::Random(s, 15, 8);
  const Spectrum a = DftFast(e);
  for (PointIndex c : {1u, 10u, 48u}) {
    const Spectrum b = DftFast(e.Translate(c));
    for (PointIndex m = 0; m < s->size(); ++m) {
      ASSERT_NEAR(std::abs(a[m]), std::abs(b[m]), 1e-9);
    }
  }
}

TEST(SpectralTest, PlancherelResidual) {
  auto s = MakeSpace(5, 2);
  EXPECT_EQ(PlancherelResidual(PointSet(s)), 0.0);
  EXPECT_LT(PlancherelResidual(PointSet::Full(s)), 1e-12);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_LT(PlancherelResidual(PointSet::Random(s, seed % 25 + 1, seed)), 1e-9);
  }
}

TEST(SpectralTest, SalemConstants) {
  auto s = MakeSpace(5, 2);
  EXPECT_NEAR(SalemConstant(PointSet::Full(s)).constant, 0.0, 1e-9);
  EXPECT_NEAR(SalemConstant(Parabola(s)).constant, 1.0, 1e-9);
  EXPECT_THROW(SalemConstant(PointSet(s)), Error);
}

TEST(SpectralTest, SalemWitnessAttainsTheMaximum) {
  auto s = MakeSpace(7, 2);
  std::vector<Vec> pts;
  for (Elem t = 0; t < 7; ++t) pts.push_back({t, 0});
  const PointSet e = PointSet::FromPoints(s, pts);
  const SalemResult r = SalemConstant(e);
  EXPECT_NE(r.witness, 0u);
  EXPECT_EQ(s->Coord(r.witness, 0), 0u);  // on the dual line
  EXPECT_NEAR(r.max_modulus, 1.0 / 7, 1e-12);
}

TEST(SpectralTest, CsvDump) {
  auto s = MakeSpace(3, 1);
  const std::vector<PointIndex> origin = {0};
  std::ostringstream out;
  WriteSpectrumCsv(DftFast(PointSet::FromIndices(s, origin)), out);
  const std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, 16), "m,re,im,modulus\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

}  // namespace
}  // namespace fqdiff
