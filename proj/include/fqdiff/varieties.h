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

#ifndef FQDIFF_VARIETIES_H_
#define FQDIFF_VARIETIES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fqdiff/pointspace.h"

namespace fqdiff {

// Polynomial in F_q[x1, x2] with no zero coefficients stored.
class BivarPoly {
 public:
  explicit BivarPoly(FieldPtr field) : field_(std::move(field)) {}

  // Terms "c*x1^i*x2^j" joined by '+'. Any factor may be omitted (c
  // defaults to 1, exponents to 1); coefficients are canonical element
  // indices. Like terms are combined.
  static BivarPoly Parse(FieldPtr field, std::string_view text);

  // Adds c * x1^i * x2^j.
  void AddTerm(uint32_t i, uint32_t j, Elem c);

  const Field& field() const { return *field_; }
  const std::map<std::pair<uint32_t, uint32_t>, Elem>& terms() const {
    return terms_;
  }
  bool IsZero() const { return terms_.empty(); }
  // Total degree; 0 for constants and for the zero polynomial.
  uint32_t Degree() const;

  Elem Evaluate(Elem x1, Elem x2) const;
  std::string ToString() const;

 private:
  FieldPtr field_;
  std::map<std::pair<uint32_t, uint32_t>, Elem> terms_;
};

// A line in F_q^2: y = slope * x + intercept, or x = a.
struct LineSpec {
  bool vertical = false;
  Elem slope = 0;
  Elem intercept = 0;
  Elem x = 0;

  static LineSpec Graph(Elem slope, Elem intercept) {
    return {false, slope, intercept, 0};
  }
  static LineSpec Vertical(Elem x) { return {true, 0, 0, x}; }
  std::string ToString() const;
  bool operator==(const LineSpec&) const = default;
};

// All q^2 + q lines: graphs by (slope, intercept), then verticals.
std::vector<LineSpec> AllLines(const Field& field);

// Zero set of P in F_q^2. Throws Error for the zero polynomial or d != 2.
PointSet VarietyPoints(const SpacePtr& space, const BivarPoly& poly);

// {x : ||x|| = r}. Requires d >= 2.
PointSet Sphere(const SpacePtr& space, Elem r);
// {(x', ||x'||) : x' in F_q^{d-1}}. Requires d >= 2.
PointSet Paraboloid(const SpacePtr& space);

PointSet LineSet(const SpacePtr& space, const LineSpec& line);
// Span of the basis; throws Error if the vectors are dependent.
PointSet Subspace(const SpacePtr& space, const std::vector<Vec>& basis);
PointSet ProductSet(const SpacePtr& space, const std::vector<Elem>& s1,
                    const std::vector<Elem>& s2);

// Rank over F_q by Gaussian elimination.
size_t Rank(const Field& field, std::vector<Vec> vectors);

// First line (in AllLines order) lying entirely inside V, if any.
std::optional<LineSpec> ContainsLine(const PointSet& v);

struct BezoutCheck {
  uint64_t max_intersection = 0;  // max_{c != 0} |V cap (V + c)|
  PointIndex witness = 0;
  uint64_t bound = 0;  // k^2
  bool pass = false;
};

// Exhaustive translate scan against the k^2 bound. Degrees with k^2 >= q
// are rejected: the bound is then no smaller than a line's own overlap.
BezoutCheck BezoutTranslateCheck(const PointSet& v, uint32_t k);

}  // namespace fqdiff

#endif  // FQDIFF_VARIETIES_H_
