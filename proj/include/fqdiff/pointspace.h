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

#ifndef FQDIFF_POINTSPACE_H_
#define FQDIFF_POINTSPACE_H_

#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fqdiff/field.h"

namespace fqdiff {

// Canonical index of a vector in F_q^d: sum_i coord_i * q^i.
using PointIndex = uint32_t;

// Coordinates of a vector, each a canonical field element index.
using Vec = std::vector<Elem>;

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// The ambient space F_q^d. Caches coordinates of every point.
class Space {
 public:
  static SpacePtr Create(FieldPtr field, int d,
                         uint64_t max_elements = MaxElements());

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int d() const { return d_; }
  uint32_t q() const { return field_->q(); }
  // q^d.
  uint32_t size() const { return size_; }
  std::string Name() const;

  PointIndex Encode(std::span<const Elem> coords) const;
  Vec Decode(PointIndex x) const;
  Elem Coord(PointIndex x, int i) const { return coords_[size_t{x} * d_ + i]; }

  PointIndex Add(PointIndex x, PointIndex y) const;
  PointIndex Sub(PointIndex x, PointIndex y) const;
  PointIndex Neg(PointIndex x) const;
  Elem Dot(PointIndex x, PointIndex y) const;
  // ||x|| = x_1^2 + ... + x_d^2.
  Elem Norm(PointIndex x) const;

  bool SameAs(const Space& other) const;

 private:
  Space() = default;

  FieldPtr field_;
  int d_ = 0;
  uint32_t size_ = 0;
  std::vector<uint32_t> stride_;
  std::vector<Elem> coords_;
  std::vector<Elem> square_;
  // Field add/neg tables for small q, empty otherwise.
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
};

// Fixed-size bit sequence, 64 bits per word.
class Bits {
 public:
  Bits() = default;
  explicit Bits(size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  size_t size() const { return size_; }
  bool Test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void Set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  size_t Count() const;

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& mutable_words() { return words_; }

  template <typename Fn>
  void ForEachSet(Fn&& fn) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t word = words_[w];
      while (word != 0) {
        fn(w * 64 + std::countr_zero(word));
        word &= word - 1;
      }
    }
  }

  bool operator==(const Bits&) const = default;

 private:
  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

// Name of the sampler used by PointSet::Random; reports record it.
inline constexpr const char* kSamplerName = "mt19937_64/partial-fisher-yates/v1";

// A subset of F_q^d backed by an indicator over all q^d points. Immutable.
class PointSet {
 public:
  // The empty set.
  explicit PointSet(SpacePtr space);

  static PointSet FromIndicator(SpacePtr space, Bits indicator);
  static PointSet FromIndices(SpacePtr space, std::span<const PointIndex> xs);
  static PointSet FromPoints(SpacePtr space, std::span<const Vec> points);
  static PointSet Full(SpacePtr space);
  // Uniform sample of `size` points without replacement. Deterministic in
  // seed across platforms.
  static PointSet Random(SpacePtr space, uint64_t size, uint64_t seed);

  const Space& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Bits& indicator() const { return bits_; }
  size_t card() const { return card_; }
  bool empty() const { return card_ == 0; }
  bool Contains(PointIndex x) const { return bits_.Test(x); }

  // Members in increasing index order.
  std::vector<PointIndex> Indices() const;

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    bits_.ForEachSet([&](size_t i) { fn(static_cast<PointIndex>(i)); });
  }

  // {b + c : b in this}.
  PointSet Translate(PointIndex c) const;
  // {-b : b in this}.
  PointSet Negate() const;
  PointSet Intersect(const PointSet& other) const;
  PointSet Union(const PointSet& other) const;
  // Uniform subsample of `size` members, deterministic in seed.
  PointSet Subsample(uint64_t size, uint64_t seed) const;

  bool operator==(const PointSet& other) const;

 private:
  PointSet(SpacePtr space, Bits bits);

  SpacePtr space_;
  Bits bits_;
  size_t card_ = 0;
};

// Throws Error unless both sets live in the same space.
void RequireSameSpace(const PointSet& a, const PointSet& b);

// Draws `count` distinct values from [0, n) by a partial Fisher-Yates
// shuffle driven by mt19937_64, returned in draw order.
std::vector<uint64_t> SampleWithoutReplacement(uint64_t n, uint64_t count,
                                               uint64_t seed);

// Point-set literal JSON: {"field": "p^n", "d": int, "points": [[...], ...]}.
std::string PointSetToJson(const PointSet& set);
PointSet PointSetFromJson(const std::string& text);

}  // namespace fqdiff

#endif  // FQDIFF_POINTSPACE_H_
