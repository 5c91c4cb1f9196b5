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

#include "fqdiff/varieties.h"

#include <charconv>

#include "fqdiff/setops.h"

namespace fqdiff {
namespace {

uint32_t ParseNumber(std::string_view text, std::string_view term) {
  uint32_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed polynomial term '" + std::string(term) + "'");
  }
  return value;
}

void RequirePlane(const Space& space) {
  if (space.d() != 2) {
    throw Error("plane construction needs d = 2, got " + space.Name());
  }
}

}  // namespace

BivarPoly BivarPoly::Parse(FieldPtr field, std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t' && ch != '\n') compact.push_back(ch);
  }
  if (compact.empty()) throw Error("empty polynomial");
  BivarPoly poly(field);
  std::string_view rest = compact;
  while (true) {
    const size_t plus = rest.find('+');
    const std::string_view term = rest.substr(0, plus);
    if (term.empty()) throw Error("empty term in polynomial '" + compact + "'");
    Elem coeff = 1;
    uint32_t i = 0, j = 0;
    std::string_view factors = term;
    while (true) {
      const size_t star = factors.find('*');
      const std::string_view factor = factors.substr(0, star);
      if (factor.starts_with("x1") || factor.starts_with("x2")) {
        uint32_t e = 1;
        if (factor.size() > 2) {
          if (factor[2] != '^') {
            throw Error("malformed polynomial term '" + std::string(term) + "'");
          }
          e = ParseNumber(factor.substr(3), term);
        }
        (factor[1] == '1' ? i : j) += e;
      } else {
        const uint32_t c = ParseNumber(factor, term);
        if (!field->Valid(c)) {
          throw Error("coefficient " + std::to_string(c) +
                      " is not an element of F_" + field->Name());
        }
        coeff = field->Mul(coeff, c);
      }
      if (star == std::string_view::npos) break;
      factors.remove_prefix(star + 1);
    }
    poly.AddTerm(i, j, coeff);
    if (plus == std::string_view::npos) break;
    rest.remove_prefix(plus + 1);
  }
  return poly;
}

void BivarPoly::AddTerm(uint32_t i, uint32_t j, Elem c) {
  auto it = terms_.find({i, j});
  const Elem sum = field_->Add(it == terms_.end() ? 0 : it->second, c);
  if (sum == 0) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[{i, j}] = sum;
  }
}

uint32_t BivarPoly::Degree() const {
  uint32_t deg = 0;
  for (const auto& [exp, c] : terms_) deg = std::max(deg, exp.first + exp.second);
  return deg;
}

Elem BivarPoly::Evaluate(Elem x1, Elem x2) const {
  const Field& f = *field_;
  // Terms are ordered by (i, j); walk backwards for Horner in x1 over
  // Horner-in-x2 inner polynomials.
  Elem outer = 0;
  uint32_t outer_exp = 0;
  bool started = false;
  auto it = terms_.rbegin();
  while (it != terms_.rend()) {
    const uint32_t i = it->first.first;
    Elem inner = 0;
    uint32_t inner_exp = it->first.second;
    for (; it != terms_.rend() && it->first.first == i; ++it) {
      for (; inner_exp > it->first.second; --inner_exp) inner = f.Mul(inner, x2);
      inner = f.Add(inner, it->second);
    }
    for (; inner_exp > 0; --inner_exp) inner = f.Mul(inner, x2);
    if (started) {
      for (; outer_exp > i; --outer_exp) outer = f.Mul(outer, x1);
    }
    outer = f.Add(outer, inner);
    outer_exp = i;
    started = true;
  }
  for (; outer_exp > 0; --outer_exp) outer = f.Mul(outer, x1);
  return outer;
}

std::string BivarPoly::ToString() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [exp, c] : terms_) {
    if (!out.empty()) out += "+";
    out += std::to_string(c);
    if (exp.first > 0) out += "*x1^" + std::to_string(exp.first);
    if (exp.second > 0) out += "*x2^" + std::to_string(exp.second);
  }
  return out;
}

std::string LineSpec::ToString() const {
  if (vertical) return "x1=" + std::to_string(x);
  return "x2=" + std::to_string(slope) + "*x1+" + std::to_string(intercept);
}

std::vector<LineSpec> AllLines(const Field& field) {
  std::vector<LineSpec> lines;
  lines.reserve(size_t{field.q()} * field.q() + field.q());
  for (Elem s = 0; s < field.q(); ++s)
    for (Elem t = 0; t < field.q(); ++t) lines.push_back(LineSpec::Graph(s, t));
  for (Elem a = 0; a < field.q(); ++a) lines.push_back(LineSpec::Vertical(a));
  return lines;
}

PointSet VarietyPoints(const SpacePtr& space, const BivarPoly& poly) {
  RequirePlane(*space);
  if (poly.IsZero()) throw Error("the zero polynomial vanishes everywhere");
  if (poly.field().q() != space->q() || poly.field().p() != space->field().p()) {
    throw Error("polynomial and space are over different fields");
  }
  Bits bits(space->size());
  for (PointIndex x = 0; x < space->size(); ++x) {
    if (poly.Evaluate(space->Coord(x, 0), space->Coord(x, 1)) == 0) bits.Set(x);
  }
  return PointSet::FromIndicator(space, std::move(bits));
}

PointSet Sphere(const SpacePtr& space, Elem r) {
  if (space->d() < 2) throw Error("sphere needs d >= 2");
  if (!space->field().Valid(r)) throw Error("radius is not a field element");
  Bits bits(space->size());
  for (PointIndex x = 0; x < space->size(); ++x) {
    if (space->Norm(x) == r) bits.Set(x);
  }
  return PointSet::FromIndicator(space, std::move(bits));
}

PointSet Paraboloid(const SpacePtr& space) {
  const int d = space->d();
  if (d < 2) throw Error("paraboloid needs d >= 2");
  const Field& f = space->field();
  Bits bits(space->size());
  // The last coordinate has stride q^{d-1}, so points with x_d = 0 are
  // exactly the indices below q^{d-1}.
  const PointIndex stride = space->size() / f.q();
  for (PointIndex head = 0; head < stride; ++head) {
    Elem norm = 0;
    for (int i = 0; i < d - 1; ++i) {
      const Elem c = space->Coord(head, i);
      norm = f.Add(norm, f.Mul(c, c));
    }
    bits.Set(head + norm * stride);
  }
  return PointSet::FromIndicator(space, std::move(bits));
}

PointSet LineSet(const SpacePtr& space, const LineSpec& line) {
  RequirePlane(*space);
  const Field& f = space->field();
  if (!f.Valid(line.slope) || !f.Valid(line.intercept) || !f.Valid(line.x)) {
    throw Error("line parameters are not field elements");
  }
  std::vector<PointIndex> pts;
  for (Elem t = 0; t < f.q(); ++t) {
    const Vec v = line.vertical ? Vec{line.x, t}
                                : Vec{t, f.Add(f.Mul(line.slope, t), line.intercept)};
    pts.push_back(space->Encode(v));
  }
  return PointSet::FromIndices(space, pts);
}

size_t Rank(const Field& f, std::vector<Vec> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Elem inv = f.Inv(rows[rank][col]);
    for (Elem& v : rows[rank]) v = f.Mul(v, inv);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Elem factor = rows[r][col];
      for (size_t c = 0; c < cols; ++c) {
        rows[r][c] = f.Sub(rows[r][c], f.Mul(factor, rows[rank][c]));
      }
    }
    ++rank;
  }
  return rank;
}

PointSet Subspace(const SpacePtr& space, const std::vector<Vec>& basis) {
  std::vector<PointIndex> gens;
  for (const Vec& v : basis) gens.push_back(space->Encode(v));
  if (Rank(space->field(), basis) != basis.size()) {
    throw Error("subspace basis is linearly dependent");
  }
  const Field& f = space->field();
  // Span, built one generator at a time: S <- {s + t*g}.
  std::vector<PointIndex> span = {0};
  for (PointIndex g : gens) {
    const Vec gv = space->Decode(g);
    std::vector<PointIndex> next;
    next.reserve(span.size() * f.q());
    for (Elem t = 0; t < f.q(); ++t) {
      Vec scaled(gv.size());
      for (size_t i = 0; i < gv.size(); ++i) scaled[i] = f.Mul(t, gv[i]);
      const PointIndex tg = space->Encode(scaled);
      for (PointIndex s : span) next.push_back(space->Add(s, tg));
    }
    span = std::move(next);
  }
  return PointSet::FromIndices(space, span);
}

PointSet ProductSet(const SpacePtr& space, const std::vector<Elem>& s1,
                    const std::vector<Elem>& s2) {
  RequirePlane(*space);
  std::vector<Vec> pts;
  for (Elem a : s1)
    for (Elem b : s2) pts.push_back({a, b});
  return PointSet::FromPoints(space, pts);
}

std::optional<LineSpec> ContainsLine(const PointSet& v) {
  RequirePlane(v.space());
  const Space& s = v.space();
  const Field& f = s.field();
  for (const LineSpec& line : AllLines(f)) {
    bool inside = true;
    for (Elem t = 0; t < f.q() && inside; ++t) {
      const Elem x1 = line.vertical ? line.x : t;
      const Elem x2 = line.vertical ? t : f.Add(f.Mul(line.slope, t), line.intercept);
      const Elem coords[2] = {x1, x2};
      inside = v.Contains(s.Encode(coords));
    }
    if (inside) return line;
  }
  return std::nullopt;
}

BezoutCheck BezoutTranslateCheck(const PointSet& v, uint32_t k) {
  RequirePlane(v.space());
  if (k < 1) throw Error("curve degree must be at least 1");
  if (uint64_t{k} * k >= v.space().q()) {
    throw Error("degree " + std::to_string(k) + " is too large for F_" +
                v.space().field().Name() + " (need k^2 < q)");
  }
  const TranslateProfile profile = ProfileTranslates(v, 1);
  BezoutCheck check;
  check.max_intersection = profile.max_off_zero;
  check.witness = profile.max_witness;
  check.bound = uint64_t{k} * k;
  check.pass = check.max_intersection <= check.bound;
  return check;
}

}  // namespace fqdiff
