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

#include <cmath>
#include <cstdio>

namespace fqdiff {

uint64_t Spectrum::ZeroCoefficientCount() const {
  const double scaled = values[0].real() * space->size();
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 0.25 || std::abs(values[0].imag()) > 0.25) {
    throw Error("zero Fourier coefficient is not an integer multiple of q^-d");
  }
  return static_cast<uint64_t>(rounded);
}

Spectrum DftNaive(const PointSet& e) {
  const Space& s = e.space();
  const Field& f = s.field();
  const std::vector<PointIndex> members = e.Indices();
  const double scale = 1.0 / s.size();
  Spectrum out{e.space_ptr(), std::vector<std::complex<double>>(s.size())};
  for (PointIndex m = 0; m < s.size(); ++m) {
    std::complex<double> acc = 0.0;
    for (PointIndex x : members) acc += f.Chi(f.Neg(s.Dot(x, m)));
    out.values[m] = acc * scale;
  }
  return out;
}

Spectrum DftFast(const PointSet& e) {
  const Space& s = e.space();
  const Field& f = s.field();
  const uint32_t p = f.p();
  const uint32_t n = f.n();
  const uint32_t size = s.size();
  const uint32_t positions = n * static_cast<uint32_t>(s.d());

  std::vector<std::complex<double>> data(size, 0.0);
  e.ForEach([&](PointIndex x) { data[x] = 1.0; });

  // omega^{-k} for k in [0, p).
  std::vector<std::complex<double>> twiddle(p);
  for (uint32_t k = 0; k < p; ++k) twiddle[k] = f.RootOfUnity((p - k) % p);

  std::vector<std::complex<double>> in(p), res(p);
  uint32_t stride = 1;
  for (uint32_t pos = 0; pos < positions; ++pos, stride *= p) {
    const uint32_t block = stride * p;
    for (uint32_t hi = 0; hi < size; hi += block) {
      for (uint32_t lo = 0; lo < stride; ++lo) {
        const uint32_t base = hi + lo;
        for (uint32_t t = 0; t < p; ++t) in[t] = data[base + t * stride];
        for (uint32_t u = 0; u < p; ++u) {
          std::complex<double> acc = 0.0;
          uint32_t k = 0;
          for (uint32_t t = 0; t < p; ++t) {
            acc += in[t] * twiddle[k];
            k += u;
            if (k >= p) k -= p;
          }
          res[u] = acc;
        }
        for (uint32_t u = 0; u < p; ++u) data[base + u * stride] = res[u];
      }
    }
  }

  // Tr(x.m) = sum_i <digits(x_i), T digits(m_i)> with T the trace form, so
  // E^(m) sits at the digit vector (T digits(m_i))_i of the plain transform.
  const std::vector<uint32_t>& form = f.TraceForm();
  std::vector<Elem> dual(f.q());
  for (Elem a = 0; a < f.q(); ++a) {
    const std::vector<uint32_t> digits = f.Digits(a);
    std::vector<uint32_t> image(n, 0);
    for (uint32_t j = 0; j < n; ++j) {
      uint64_t acc = 0;
      for (uint32_t l = 0; l < n; ++l) acc += uint64_t{form[j * n + l]} * digits[l];
      image[j] = static_cast<uint32_t>(acc % p);
    }
    dual[a] = f.FromDigits(image);
  }

  const double scale = 1.0 / size;
  Spectrum out{e.space_ptr(), std::vector<std::complex<double>>(size)};
  for (PointIndex m = 0; m < size; ++m) {
    PointIndex k = 0;
    uint32_t q_pow = 1;
    for (int i = 0; i < s.d(); ++i, q_pow *= f.q()) {
      k += dual[s.Coord(m, i)] * q_pow;
    }
    out.values[m] = data[k] * scale;
  }
  return out;
}

SalemResult MaxNonzeroCoefficient(const Spectrum& spectrum) {
  SalemResult r;
  for (PointIndex m = 1; m < spectrum.values.size(); ++m) {
    const double mod = std::abs(spectrum.values[m]);
    if (mod > r.max_modulus) {
      r.max_modulus = mod;
      r.witness = m;
    }
  }
  return r;
}

SalemResult SalemConstant(const PointSet& e, const Spectrum& spectrum) {
  if (e.empty()) throw Error("Salem constant of the empty set is undefined");
  SalemResult r = MaxNonzeroCoefficient(spectrum);
  r.constant = r.max_modulus * e.space().size() /
               std::sqrt(static_cast<double>(e.card()));
  return r;
}

SalemResult SalemConstant(const PointSet& e) {
  if (e.empty()) throw Error("Salem constant of the empty set is undefined");
  return SalemConstant(e, DftFast(e));
}

double PlancherelResidual(const PointSet& e, const Spectrum& spectrum) {
  double total = 0.0;
  for (const auto& v : spectrum.values) total += std::norm(v);
  return std::abs(total - static_cast<double>(e.card()) / e.space().size());
}

double PlancherelResidual(const PointSet& e) {
  return PlancherelResidual(e, DftFast(e));
}

void WriteSpectrumCsv(const Spectrum& spectrum, std::ostream& out) {
  out << "m,re,im,modulus\n";
  char line[128];
  for (PointIndex m = 0; m < spectrum.values.size(); ++m) {
    const auto& v = spectrum.values[m];
    std::snprintf(line, sizeof(line), "%u,%.17g,%.17g,%.17g\n", m, v.real(),
                  v.imag(), std::abs(v));
    out << line;
  }
}

}  // namespace fqdiff
