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

#ifndef FQDIFF_FIELD_H_
#define FQDIFF_FIELD_H_

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fqdiff {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A field element is its canonical index in [0, q): the coefficient vector
// of the residue polynomial read as a base-p integer, lowest degree first.
// Index 0 is zero and index 1 is one.
using Elem = uint32_t;

// Default ceiling on element counts (field order and ambient space size).
inline constexpr uint64_t kDefaultMaxElements = uint64_t{1} << 20;

// The ceiling in effect: FQDIFF_MAX_ELEMENTS if set and valid, otherwise
// kDefaultMaxElements.
uint64_t MaxElements();

bool IsPrime(uint64_t n);

struct FieldSpec {
  uint32_t p = 0;
  uint32_t n = 0;
  // Monic modulus coefficients c_0..c_n (c_n == 1); empty for prime fields.
  std::vector<uint32_t> modulus;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Arithmetic of F_q, q = p^n. Immutable once built.
class Field {
 public:
  // Builds F_{p^n}. For n > 1 the modulus is the first monic irreducible of
  // degree n when monic polynomials are enumerated by the base-p index of
  // their lower coefficients (c_0 least significant).
  static FieldPtr Create(uint32_t p, uint32_t n,
                         uint64_t max_elements = MaxElements());

  // Parses "p^n" (or a bare prime "p").
  static FieldPtr Parse(std::string_view text,
                        uint64_t max_elements = MaxElements());

  // Resolves an integer prime power q to its (p, n).
  static FieldPtr ForOrder(uint64_t q, uint64_t max_elements = MaxElements());

  uint32_t p() const { return spec_.p; }
  uint32_t n() const { return spec_.n; }
  uint32_t q() const { return q_; }
  const FieldSpec& spec() const { return spec_; }
  std::string Name() const;

  bool Valid(Elem a) const { return a < q_; }

  Elem Add(Elem a, Elem b) const;
  Elem Sub(Elem a, Elem b) const;
  Elem Neg(Elem a) const;
  Elem Mul(Elem a, Elem b) const;
  // Throws Error for a == 0.
  Elem Inv(Elem a) const;
  Elem Pow(Elem a, uint64_t e) const;

  // Absolute trace onto F_p, as a residue in [0, p).
  uint32_t Trace(Elem a) const { return trace_[a]; }

  // exp(2*pi*i*k/p).
  const std::complex<double>& RootOfUnity(uint32_t k) const {
    return roots_[k];
  }

  // The canonical additive character exp(2*pi*i*Tr(a)/p).
  const std::complex<double>& Chi(Elem a) const {
    return roots_[trace_[a]];
  }

  // Coefficients c_0..c_{n-1} of a.
  std::vector<uint32_t> Digits(Elem a) const;
  Elem FromDigits(const std::vector<uint32_t>& digits) const;

  // Tr(e_j * e_k) for the power basis e_j = t^j, row-major n x n.
  const std::vector<uint32_t>& TraceForm() const { return trace_form_; }

  // Is a a nonzero square (or zero)?
  bool IsSquare(Elem a) const;

 private:
  Field() = default;

  Elem MulSlow(Elem a, Elem b) const;
  Elem PowSlow(Elem a, uint64_t e) const;
  void BuildTables();

  FieldSpec spec_;
  uint32_t q_ = 0;
  std::vector<uint32_t> pow_p_;  // p^0 .. p^n
  std::vector<Elem> exp_;        // n > 1: g^i, i in [0, q-1)
  std::vector<uint32_t> log_;    // n > 1: log_g(a), a != 0
  std::vector<uint32_t> trace_;
  std::vector<uint32_t> trace_form_;
  std::vector<std::complex<double>> roots_;
};

}  // namespace fqdiff

#endif  // FQDIFF_FIELD_H_
