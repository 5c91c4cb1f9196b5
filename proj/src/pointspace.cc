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

#include "fqdiff/pointspace.h"

#include <random>
#include <utility>

#include "json.hpp"

namespace fqdiff {

SpacePtr Space::Create(FieldPtr field, int d, uint64_t max_elements) {
  if (!field) throw Error("space requires a field");
  if (d < 1) throw Error("dimension must be at least 1");
  uint64_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= field->q();
    if (size > max_elements) {
      throw Error("space F_" + field->Name() + "^" + std::to_string(d) +
                  " exceeds the element ceiling " +
                  std::to_string(max_elements));
    }
  }
  std::shared_ptr<Space> s(new Space());
  s->field_ = std::move(field);
  s->d_ = d;
  s->size_ = static_cast<uint32_t>(size);
  const uint32_t q = s->field_->q();
  s->stride_.resize(d);
  for (int i = 0; i < d; ++i) s->stride_[i] = i == 0 ? 1 : s->stride_[i - 1] * q;
  s->coords_.resize(size * d);
  for (uint64_t x = 0; x < size; ++x) {
    uint64_t rest = x;
    for (int i = 0; i < d; ++i) {
      s->coords_[x * d + i] = static_cast<Elem>(rest % q);
      rest /= q;
    }
  }
  const Field& f = *s->field_;
  s->square_.resize(q);
  s->neg_table_.resize(q);
  for (Elem a = 0; a < q; ++a) {
    s->square_[a] = f.Mul(a, a);
    s->neg_table_[a] = f.Neg(a);
  }
  if (q <= 1024) {
    s->add_table_.resize(size_t{q} * q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) s->add_table_[size_t{a} * q + b] = f.Add(a, b);
  }
  return s;
}

std::string Space::Name() const {
  return "F_" + field_->Name() + "^" + std::to_string(d_);
}

PointIndex Space::Encode(std::span<const Elem> coords) const {
  if (coords.size() != static_cast<size_t>(d_)) {
    throw Error("vector has " + std::to_string(coords.size()) +
                " coordinates, expected " + std::to_string(d_));
  }
  PointIndex x = 0;
  for (int i = 0; i < d_; ++i) {
    if (!field_->Valid(coords[i])) {
      throw Error("coordinate " + std::to_string(coords[i]) +
                  " is not an element of F_" + field_->Name());
    }
    x += coords[i] * stride_[i];
  }
  return x;
}

Vec Space::Decode(PointIndex x) const {
  const Elem* c = &coords_[size_t{x} * d_];
  return Vec(c, c + d_);
}

PointIndex Space::Add(PointIndex x, PointIndex y) const {
  const Elem* a = &coords_[size_t{x} * d_];
  const Elem* b = &coords_[size_t{y} * d_];
  const uint32_t q = field_->q();
  PointIndex out = 0;
  for (int i = 0; i < d_; ++i) {
    const Elem s = add_table_.empty() ? field_->Add(a[i], b[i])
                                      : add_table_[size_t{a[i]} * q + b[i]];
    out += s * stride_[i];
  }
  return out;
}

PointIndex Space::Neg(PointIndex x) const {
  const Elem* a = &coords_[size_t{x} * d_];
  PointIndex out = 0;
  for (int i = 0; i < d_; ++i) out += neg_table_[a[i]] * stride_[i];
  return out;
}

PointIndex Space::Sub(PointIndex x, PointIndex y) const {
  const Elem* a = &coords_[size_t{x} * d_];
  const Elem* b = &coords_[size_t{y} * d_];
  const uint32_t q = field_->q();
  PointIndex out = 0;
  for (int i = 0; i < d_; ++i) {
    const Elem nb = neg_table_[b[i]];
    const Elem s = add_table_.empty() ? field_->Add(a[i], nb)
                                      : add_table_[size_t{a[i]} * q + nb];
    out += s * stride_[i];
  }
  return out;
}

Elem Space::Dot(PointIndex x, PointIndex y) const {
  const Elem* a = &coords_[size_t{x} * d_];
  const Elem* b = &coords_[size_t{y} * d_];
  Elem acc = 0;
  for (int i = 0; i < d_; ++i) acc = field_->Add(acc, field_->Mul(a[i], b[i]));
  return acc;
}

Elem Space::Norm(PointIndex x) const {
  const Elem* a = &coords_[size_t{x} * d_];
  Elem acc = 0;
  for (int i = 0; i < d_; ++i) acc = field_->Add(acc, square_[a[i]]);
  return acc;
}

bool Space::SameAs(const Space& other) const {
  return this == &other ||
         (d_ == other.d_ && field_->p() == other.field_->p() &&
          field_->n() == other.field_->n());
}

size_t Bits::Count() const {
  size_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::vector<uint64_t> SampleWithoutReplacement(uint64_t n, uint64_t count,
                                               uint64_t seed) {
  if (count > n) {
    throw Error("cannot draw " + std::to_string(count) + " of " +
                std::to_string(n) + " points");
  }
  std::mt19937_64 gen(seed);
  // Unbiased draw in [0, bound) by rejection of the low 2^64 mod bound values.
  auto uniform = [&gen](uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = gen();
      if (r >= threshold) return r % bound;
    }
  };
  std::vector<uint64_t> perm(n);
  for (uint64_t i = 0; i < n; ++i) perm[i] = i;
  for (uint64_t i = 0; i < count; ++i) {
    std::swap(perm[i], perm[i + uniform(n - i)]);
  }
  perm.resize(count);
  return perm;
}

PointSet::PointSet(SpacePtr space)
    : space_(std::move(space)), bits_(space_->size()), card_(0) {}

PointSet::PointSet(SpacePtr space, Bits bits)
    : space_(std::move(space)), bits_(std::move(bits)), card_(bits_.Count()) {}

PointSet PointSet::FromIndicator(SpacePtr space, Bits indicator) {
  if (indicator.size() != space->size()) {
    throw Error("indicator length does not match the space size");
  }
  return PointSet(std::move(space), std::move(indicator));
}

PointSet PointSet::FromIndices(SpacePtr space, std::span<const PointIndex> xs) {
  Bits bits(space->size());
  for (PointIndex x : xs) {
    if (x >= space->size()) {
      throw Error("point index " + std::to_string(x) + " outside " +
                  space->Name());
    }
    bits.Set(x);
  }
  return PointSet(std::move(space), std::move(bits));
}

PointSet PointSet::FromPoints(SpacePtr space, std::span<const Vec> points) {
  Bits bits(space->size());
  for (const Vec& v : points) bits.Set(space->Encode(v));
  return PointSet(std::move(space), std::move(bits));
}

PointSet PointSet::Full(SpacePtr space) {
  Bits bits(space->size());
  for (size_t i = 0; i < bits.size(); ++i) bits.Set(i);
  return PointSet(std::move(space), std::move(bits));
}

PointSet PointSet::Random(SpacePtr space, uint64_t size, uint64_t seed) {
  Bits bits(space->size());
  for (uint64_t x : SampleWithoutReplacement(space->size(), size, seed)) {
    bits.Set(x);
  }
  return PointSet(std::move(space), std::move(bits));
}

std::vector<PointIndex> PointSet::Indices() const {
  std::vector<PointIndex> out;
  out.reserve(card_);
  ForEach([&](PointIndex x) { out.push_back(x); });
  return out;
}

PointSet PointSet::Translate(PointIndex c) const {
  if (c >= space_->size()) throw Error("translation vector outside space");
  Bits bits(space_->size());
  ForEach([&](PointIndex x) { bits.Set(space_->Add(x, c)); });
  return PointSet(space_, std::move(bits));
}

PointSet PointSet::Negate() const {
  Bits bits(space_->size());
  ForEach([&](PointIndex x) { bits.Set(space_->Neg(x)); });
  return PointSet(space_, std::move(bits));
}

PointSet PointSet::Intersect(const PointSet& other) const {
  RequireSameSpace(*this, other);
  Bits bits = bits_;
  for (size_t w = 0; w < bits.words().size(); ++w) {
    bits.mutable_words()[w] &= other.bits_.words()[w];
  }
  return PointSet(space_, std::move(bits));
}

PointSet PointSet::Union(const PointSet& other) const {
  RequireSameSpace(*this, other);
  Bits bits = bits_;
  for (size_t w = 0; w < bits.words().size(); ++w) {
    bits.mutable_words()[w] |= other.bits_.words()[w];
  }
  return PointSet(space_, std::move(bits));
}

PointSet PointSet::Subsample(uint64_t size, uint64_t seed) const {
  const std::vector<PointIndex> members = Indices();
  Bits bits(space_->size());
  for (uint64_t i : SampleWithoutReplacement(members.size(), size, seed)) {
    bits.Set(members[i]);
  }
  return PointSet(space_, std::move(bits));
}

bool PointSet::operator==(const PointSet& other) const {
  return space_->SameAs(*other.space_) && bits_ == other.bits_;
}

void RequireSameSpace(const PointSet& a, const PointSet& b) {
  if (!a.space().SameAs(b.space())) {
    throw Error("point sets live in different spaces: " + a.space().Name() +
                " vs " + b.space().Name());
  }
}

std::string PointSetToJson(const PointSet& set) {
  nlohmann::json doc;
  doc["field"] = set.space().field().Name();
  doc["d"] = set.space().d();
  nlohmann::json points = nlohmann::json::array();
  set.ForEach([&](PointIndex x) { points.push_back(set.space().Decode(x)); });
  doc["points"] = std::move(points);
  return doc.dump();
}

PointSet PointSetFromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("point-set literal is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("field") || !doc.contains("d") ||
      !doc.contains("points")) {
    throw Error("point-set literal needs \"field\", \"d\" and \"points\"");
  }
  try {
    auto space = Space::Create(
        Field::Parse(doc["field"].get<std::string>()), doc["d"].get<int>());
    std::vector<Vec> points;
    for (const auto& p : doc["points"]) points.push_back(p.get<Vec>());
    return PointSet::FromPoints(space, points);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed point-set literal: ") + e.what());
  }
}

}  // namespace fqdiff
