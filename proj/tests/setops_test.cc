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

#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"

namespace fqdiff {
namespace {

SpacePtr MakeSpace(uint32_t q, int d) {
  return Space::Create(Field::ForOrder(q), d);
}

PointSet Circle(const SpacePtr& s, Elem r) {
  std::vector<PointIndex> pts;
  for (PointIndex x = 0; x < s->size(); ++x)
    if (s->Norm(x) == r) pts.push_back(x);
  return PointSet::FromIndices(s, pts);
}

// Plain modular arithmetic on decoded coordinates; valid for prime q only.
std::set<std::vector<int>> DifferenceOracle(const PointSet& a, const PointSet& b) {
  const int q = static_cast<int>(a.space().q());
  std::set<std::vector<int>> out;
  for (PointIndex x : a.Indices()) {
    for (PointIndex y : b.Indices()) {
      const Vec u = a.space().Decode(x), v = b.space().Decode(y);
      std::vector<int> w(u.size());
      for (size_t i = 0; i < u.size(); ++i) w[i] = ((int(u[i]) - int(v[i])) % q + q) % q;
      out.insert(w);
    }
  }
  return out;
}

TEST(DifferenceSetTest, Examples) {
  auto s3 = MakeSpace(3, 2);
  EXPECT_EQ(DifferenceSet(PointSet::Full(s3), PointSet::Full(s3)).card(), 9u);

  auto s5 = MakeSpace(5, 2);
  const std::vector<PointIndex> a = {s5->Encode(Vec{3, 1})};
  const std::vector<PointIndex> b = {s5->Encode(Vec{1, 4})};
  const PointSet diff =
      DifferenceSet(PointSet::FromIndices(s5, a), PointSet::FromIndices(s5, b));
  ASSERT_EQ(diff.card(), 1u);
  EXPECT_EQ(s5->Decode(diff.Indices()[0]), (Vec{2, 2}));

  const PointSet circle = Circle(s5, 1);
  ASSERT_EQ(circle.card(), 4u);
  EXPECT_EQ(DifferenceSet(circle, circle).card(), 9u);  // brute-force value
}

TEST(DifferenceSetTest, MatchesEnumerationOracle) {
  for (uint32_t q : {5u, 7u}) {
    auto s = MakeSpace(q, 2);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      const PointSet a = PointSet::Random(s, seed + 1, seed);
      const PointSet b = PointSet::Random(s, 2 * seed + 1, seed + 50);
      const PointSet diff = DifferenceSet(a, b);
      const auto oracle = DifferenceOracle(a, b);
      ASSERT_EQ(diff.card(), oracle.size());
      for (PointIndex c : diff.Indices()) {
        const Vec v = s->Decode(c);
        ASSERT_TRUE(oracle.count(std::vector<int>(v.begin(), v.end())));
      }
      EXPECT_GE(diff.card(), std::max(a.card(), b.card()));
    }
  }
}

TEST(DifferenceSetTest, SpaceMismatch) {
  EXPECT_THROW(DifferenceSet(PointSet::Full(MakeSpace(5, 2)),
                             PointSet::Full(MakeSpace(5, 3))),
               Error);
}

TEST(DistanceSetTest, Examples) {
  auto s5 = MakeSpace(5, 2);
  const std::vector<PointIndex> one = {7};
  const PointSet single = PointSet::FromIndices(s5, one);
  EXPECT_EQ(DistanceSet(single, single), (std::vector<Elem>{0}));

  const PointSet circle = Circle(s5, 1);
  EXPECT_EQ(DistanceSet(circle, circle), (std::vector<Elem>{0, 2, 4}));

  // Every element of F_q is a sum of two squares.
  for (uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
    auto s = MakeSpace(q, 2);
    std::set<Elem> sums;
    const Field& f = s->field();
    for (Elem x = 0; x < q; ++x)
      for (Elem y = 0; y < q; ++y) sums.insert(f.Add(f.Mul(x, x), f.Mul(y, y)));
    ASSERT_EQ(sums.size(), q);
    EXPECT_EQ(DistanceSet(PointSet::Full(s), PointSet::Full(s)).size(), q);
  }
}

TEST(DistanceSetTest, IsNormImageOfDifferenceSet) {
  auto s = MakeSpace(7, 3);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet a = PointSet::Random(s, 3 + seed, seed);
    const PointSet b = PointSet::Random(s, 2 + seed, seed + 9);
    std::set<Elem> norms;
    DifferenceSet(a, b).ForEach([&](PointIndex c) { norms.insert(s->Norm(c)); });
    const std::vector<Elem> dist = DistanceSet(a, b);
    EXPECT_EQ(std::vector<Elem>(norms.begin(), norms.end()), dist);
    EXPECT_LE(dist.size(), s->q());
  }
}

TEST(CorrelationTest, Singletons) {
  auto s = MakeSpace(5, 2);
  const std::vector<PointIndex> origin = {0};
  const PointSet o = PointSet::FromIndices(s, origin);
  const CorrelationTable t = Correlate(o, o);
  EXPECT_EQ(t.counts[0], 1u);
  EXPECT_EQ(t.Total(), 1u);
}

TEST(CorrelationTest, InvariantsOnRandomSets) {
  auto s = MakeSpace(7, 2);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const PointSet a = PointSet::Random(s, seed + 2, seed);
    const PointSet b = PointSet::Random(s, 30 - seed, seed + 1);
    const CorrelationTable t = Correlate(a, b);
    EXPECT_EQ(t.Total(), a.card() * b.card());
    EXPECT_EQ(t.Support(), DifferenceSet(a, b));
    for (PointIndex c = 0; c < s->size(); ++c) {
      ASSERT_LE(t.counts[c], std::min(a.card(), b.card()));
      ASSERT_EQ(t.counts[c], a.Intersect(b.Translate(c)).card());
    }
  }
}

TEST(EnergyTest, FullSpace) {
  auto s = MakeSpace(3, 2);
  const PointSet full = PointSet::Full(s);
  EXPECT_EQ(EnergyBrute(full, full), 729u);
  EXPECT_EQ(EnergyCorr(full, full), 729u);
  EXPECT_EQ(EnergySpectral(full, full), 729u);
  auto s3 = MakeSpace(3, 3);
  EXPECT_EQ(EnergyCorr(PointSet::Full(s3), PointSet::Full(s3)), 19683u);
}

TEST(EnergyTest, Singletons) {
  auto s = MakeSpace(5, 2);
  const std::vector<PointIndex> a = {3}, b = {17};
  const PointSet sa = PointSet::FromIndices(s, a), sb = PointSet::FromIndices(s, b);
  EXPECT_EQ(EnergyBrute(sa, sb), 1u);
  EXPECT_EQ(EnergyCorr(sa, sb), 1u);
  EXPECT_EQ(EnergySpectral(sa, sb), 1u);
}

TEST(EnergyTest, CircleValue) {
  const PointSet circle = Circle(MakeSpace(5, 2), 1);
  EXPECT_EQ(EnergyBrute(circle, circle), 36u);  // quadruple enumeration
}

TEST(EnergyTest, ThreeRoutesAgree) {
  for (uint32_t q : {5u, 7u, 9u}) {
    auto s = MakeSpace(q, 2);
    for (uint64_t seed = 0; seed < 30; ++seed) {
      const PointSet a = PointSet::Random(s, 1 + (seed * 5) % s->size(), seed);
      const PointSet b = PointSet::Random(s, 1 + (seed * 11) % s->size(), ~seed);
      const uint64_t brute = EnergyBrute(a, b);
      ASSERT_EQ(EnergyCorr(a, b), brute);
      ASSERT_EQ(EnergySpectral(a, b), brute);
      ASSERT_LE(brute, std::min(a.card() * a.card() * b.card(),
                                a.card() * b.card() * b.card()));
    }
  }
}

TEST(EnergyTest, BruteForceGuard) {
  auto s = MakeSpace(11, 2);
  const PointSet full = PointSet::Full(s);
  SetOpsLimits tight;
  tight.brute_force_ops = 1000;
  EXPECT_THROW(EnergyBrute(full, full, tight), Error);
  EXPECT_EQ(EnergyBrute(full, full), 11u * 11 * 11 * 11 * 11 * 11);
}

TEST(TranslateProfileTest, Line) {
  const uint32_t q = 7;
  auto s = MakeSpace(q, 2);
  std::vector<Vec> pts;
  for (Elem t = 0; t < q; ++t) pts.push_back({t, s->field().Mul(3, t)});
  const TranslateProfile p = ProfileTranslates(PointSet::FromPoints(s, pts), 1);
  EXPECT_EQ(p.exceptional.size(), q - 1);
  for (PointIndex c : p.exceptional) {
    EXPECT_EQ(s->Coord(c, 1), s->field().Mul(3, s->Coord(c, 0)));
  }
  EXPECT_EQ(p.max_off_zero, q);
}

TEST(TranslateProfileTest, Circle) {
  auto s = MakeSpace(5, 2);
  const TranslateProfile p = ProfileTranslates(Circle(s, 1), 4);
  EXPECT_TRUE(p.exceptional.empty());
  EXPECT_EQ(p.max_off_zero, 2u);
  EXPECT_EQ(p.at_zero, 4u);
  EXPECT_EQ(p.CoveringSize(), 0u);
  EXPECT_EQ(p.histogram, (std::map<uint64_t, uint64_t>{{0, 16}, {1, 4}, {2, 4}, {4, 1}}));
  EXPECT_EQ(ProfileTranslates(Circle(s, 1), 1).exceptional.size(), 4u);
  EXPECT_EQ(ProfileTranslates(Circle(s, 1), 1).CoveringSize(), 5u);
}

TEST(TranslateProfileTest, PointAndBadThreshold) {
  auto s = MakeSpace(5, 2);
  const std::vector<PointIndex> origin = {0};
  const PointSet o = PointSet::FromIndices(s, origin);
  for (uint64_t k : {1u, 2u, 10u}) {
    EXPECT_TRUE(ProfileTranslates(o, k).exceptional.empty());
  }
  EXPECT_THROW(ProfileTranslates(o, 0), Error);
}

TEST(SetOpsTest, CsvExports) {
  auto s = MakeSpace(3, 1);
  const PointSet full = PointSet::Full(s);
  std::ostringstream corr, hist;
  WriteCorrelationCsv(Correlate(full, full), corr);
  EXPECT_EQ(corr.str(), "c,count\n0,3\n1,3\n2,3\n");
  WriteHistogramCsv(ProfileTranslates(full, 1), hist);
  EXPECT_EQ(hist.str(), "intersection,frequency\n3,3\n");
}

}  // namespace
}  // namespace fqdiff
