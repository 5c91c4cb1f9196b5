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

#include "fqdiff/field.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace fqdiff {
namespace {

using Poly = std::vector<uint32_t>;  // ascending coefficients over F_p

// Remainder of num modulo the monic den, over F_p.
Poly PolyMod(Poly num, const Poly& den, uint32_t p) {
  const size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const uint64_t lead = num.back();
    const size_t shift = num.size() - 1 - dd;
    if (lead != 0) {
      for (size_t i = 0; i <= dd; ++i) {
        const uint64_t sub = lead * den[i] % p;
        num[shift + i] = static_cast<uint32_t>((num[shift + i] + p - sub) % p);
      }
    }
    num.pop_back();
  }
  return num;
}

Poly MonicFromIndex(uint64_t index, uint32_t degree, uint32_t p) {
  Poly poly(degree + 1, 0);
  for (uint32_t i = 0; i < degree; ++i) {
    poly[i] = static_cast<uint32_t>(index % p);
    index /= p;
  }
  poly[degree] = 1;
  return poly;
}

uint64_t IntPow(uint64_t base, uint32_t e) {
  uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Exhaustive search for a monic factor of degree 1..n/2.
bool IsIrreducible(const Poly& poly, uint32_t p) {
  const uint32_t n = static_cast<uint32_t>(poly.size() - 1);
  for (uint32_t k = 1; 2 * k <= n; ++k) {
    const uint64_t count = IntPow(p, k);
    for (uint64_t idx = 0; idx < count; ++idx) {
      const Poly rem = PolyMod(poly, MonicFromIndex(idx, k, p), p);
      bool zero = true;
      for (uint32_t c : rem) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<uint64_t> PrimeFactors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

uint32_t ParseUint(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  uint32_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed " + std::string(what) + " '" + std::string(text) +
                "'");
  }
  return value;
}

}  // namespace

uint64_t MaxElements() {
  if (const char* env = std::getenv("FQDIFF_MAX_ELEMENTS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultMaxElements;
}

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldPtr Field::Create(uint32_t p, uint32_t n, uint64_t max_elements) {
  if (!IsPrime(p)) throw Error("field characteristic " + std::to_string(p) +
                               " is not prime");
  if (n < 1) throw Error("extension degree must be at least 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > max_elements) {
      throw Error("field " + std::to_string(p) + "^" + std::to_string(n) +
                  " exceeds the element ceiling " +
                  std::to_string(max_elements));
    }
  }

  std::shared_ptr<Field> f(new Field());
  f->spec_.p = p;
  f->spec_.n = n;
  f->q_ = static_cast<uint32_t>(q);
  f->pow_p_.resize(n + 1);
  f->pow_p_[0] = 1;
  for (uint32_t i = 1; i <= n; ++i) f->pow_p_[i] = f->pow_p_[i - 1] * p;

  if (n > 1) {
    bool found = false;
    for (uint64_t idx = 0; idx < q && !found; ++idx) {
      Poly candidate = MonicFromIndex(idx, n, p);
      if (IsIrreducible(candidate, p)) {
        f->spec_.modulus = std::move(candidate);
        found = true;
      }
    }
    if (!found) {
      throw std::logic_error("no irreducible polynomial of degree " +
                             std::to_string(n) + " over F_" +
                             std::to_string(p));
    }
  }
  f->BuildTables();
  return f;
}

FieldPtr Field::Parse(std::string_view text, uint64_t max_elements) {
  const size_t caret = text.find('^');
  if (caret == std::string_view::npos) {
    return ForOrder(ParseUint(text, "field order"), max_elements);
  }
  const uint32_t p = ParseUint(text.substr(0, caret), "field characteristic");
  const uint32_t n = ParseUint(text.substr(caret + 1), "extension degree");
  return Create(p, n, max_elements);
}

FieldPtr Field::ForOrder(uint64_t q, uint64_t max_elements) {
  const std::vector<uint64_t> factors = PrimeFactors(q);
  if (q < 2 || factors.size() != 1) {
    throw Error(std::to_string(q) + " is not a prime power");
  }
  uint32_t n = 0;
  for (uint64_t r = q; r > 1; r /= factors[0]) ++n;
  return Create(static_cast<uint32_t>(factors[0]), n, max_elements);
}

std::string Field::Name() const {
  return std::to_string(spec_.p) + "^" + std::to_string(spec_.n);
}

void Field::BuildTables() {
  const uint32_t p = spec_.p;
  const uint32_t n = spec_.n;

  roots_.resize(p);
  for (uint32_t k = 0; k < p; ++k) {
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
  }
  roots_[0] = {1.0, 0.0};

  if (n > 1) {
    const uint64_t order = q_ - 1;
    const std::vector<uint64_t> factors = PrimeFactors(order);
    Elem generator = 0;
    for (Elem g = 1; g < q_ && generator == 0; ++g) {
      bool primitive = true;
      for (uint64_t r : factors) {
        if (PowSlow(g, order / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) generator = g;
    }
    exp_.resize(order);
    log_.assign(q_, 0);
    Elem x = 1;
    for (uint64_t i = 0; i < order; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<uint32_t>(i);
      x = MulSlow(x, generator);
    }
  }

  // Trace is F_p-linear: Tr(sum c_j t^j) = sum c_j Tr(t^j).
  std::vector<uint32_t> basis_trace(2 * n, 0);
  for (uint32_t j = 0; j < 2 * n - 1; ++j) {
    // t has index p; t^0 = 1 is all we need when n == 1.
    const Elem basis = n == 1 ? 1 : PowSlow(p, j);
    Elem sum = 0;
    Elem conj = basis;
    for (uint32_t i = 0; i < n; ++i) {
      sum = Add(sum, conj);
      conj = PowSlow(conj, p);
    }
    if (sum >= p) throw std::logic_error("trace left the prime subfield");
    basis_trace[j] = sum;
  }
  trace_.resize(q_);
  if (n == 1) {
    for (Elem a = 0; a < q_; ++a) trace_[a] = a;
  } else {
    for (Elem a = 0; a < q_; ++a) {
      uint64_t acc = 0;
      Elem rest = a;
      for (uint32_t j = 0; j < n; ++j) {
        acc += uint64_t{rest % p} * basis_trace[j];
        rest /= p;
      }
      trace_[a] = static_cast<uint32_t>(acc % p);
    }
  }
  trace_form_.resize(n * n);
  for (uint32_t j = 0; j < n; ++j) {
    for (uint32_t k = 0; k < n; ++k) {
      trace_form_[j * n + k] = n == 1 ? 1 : basis_trace[j + k];
    }
  }
}

Elem Field::Add(Elem a, Elem b) const {
  const uint32_t p = spec_.p;
  if (spec_.n == 1) {
    const uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  Elem out = 0;
  for (uint32_t i = 0; i < spec_.n; ++i) {
    uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * pow_p_[i];
    a /= p;
    b /= p;
  }
  return out;
}

Elem Field::Neg(Elem a) const {
  const uint32_t p = spec_.p;
  if (spec_.n == 1) return a == 0 ? 0 : p - a;
  Elem out = 0;
  for (uint32_t i = 0; i < spec_.n; ++i) {
    const uint32_t c = a % p;
    out += (c == 0 ? 0 : p - c) * pow_p_[i];
    a /= p;
  }
  return out;
}

Elem Field::Sub(Elem a, Elem b) const { return Add(a, Neg(b)); }

Elem Field::Mul(Elem a, Elem b) const {
  if (spec_.n == 1) {
    return static_cast<Elem>(uint64_t{a} * b % spec_.p);
  }
  if (a == 0 || b == 0) return 0;
  uint64_t e = uint64_t{log_[a]} + log_[b];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

Elem Field::Inv(Elem a) const {
  if (a == 0) throw Error("inverse of zero in F_" + Name());
  if (spec_.n == 1) return Pow(a, q_ - 2);
  const uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem Field::Pow(Elem a, uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = Mul(result, base);
    base = Mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::MulSlow(Elem a, Elem b) const {
  const uint32_t p = spec_.p;
  if (spec_.n == 1) return static_cast<Elem>(uint64_t{a} * b % p);
  const std::vector<uint32_t> x = Digits(a);
  const std::vector<uint32_t> y = Digits(b);
  Poly prod(2 * spec_.n - 1, 0);
  for (uint32_t i = 0; i < spec_.n; ++i) {
    for (uint32_t j = 0; j < spec_.n; ++j) {
      prod[i + j] =
          static_cast<uint32_t>((prod[i + j] + uint64_t{x[i]} * y[j]) % p);
    }
  }
  Poly rem = PolyMod(std::move(prod), spec_.modulus, p);
  rem.resize(spec_.n, 0);
  return FromDigits(rem);
}

Elem Field::PowSlow(Elem a, uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = MulSlow(result, base);
    base = MulSlow(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<uint32_t> Field::Digits(Elem a) const {
  std::vector<uint32_t> out(spec_.n);
  for (uint32_t i = 0; i < spec_.n; ++i) {
    out[i] = a % spec_.p;
    a /= spec_.p;
  }
  return out;
}

Elem Field::FromDigits(const std::vector<uint32_t>& digits) const {
  Elem out = 0;
  for (size_t i = 0; i < digits.size() && i < spec_.n; ++i) {
    out += (digits[i] % spec_.p) * pow_p_[i];
  }
  return out;
}

bool Field::IsSquare(Elem a) const {
  if (a == 0 || spec_.p == 2) return true;
  return Pow(a, (q_ - 1) / 2) == 1;
}

}  // namespace fqdiff
