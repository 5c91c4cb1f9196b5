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

#ifndef FQDIFF_SPECTRAL_H_
#define FQDIFF_SPECTRAL_H_

#include <complex>
#include <ostream>
#include <vector>

#include "fqdiff/pointspace.h"

namespace fqdiff {

// Fourier coefficients E^(m) = q^{-d} sum_{x in E} chi(-x.m) for every m,
// indexed like points of the space.
struct Spectrum {
  SpacePtr space;
  std::vector<std::complex<double>> values;

  const std::complex<double>& operator[](PointIndex m) const {
    return values[m];
  }
  // round(q^d * |E^(0)|); throws Error if not within 0.25 of an integer.
  uint64_t ZeroCoefficientCount() const;
};

// Direct summation over m and x. Reference path.
Spectrum DftNaive(const PointSet& e);

// Tensor transform over (Z_p)^{nd}: one size-p DFT pass per base-p digit,
// followed by the trace-form relabelling of frequencies.
Spectrum DftFast(const PointSet& e);

struct SalemResult {
  // max_{m != 0} |E^(m)| * q^d / sqrt|E|.
  double constant = 0.0;
  // Frequency attaining the maximum (0 if q^d == 1).
  PointIndex witness = 0;
  double max_modulus = 0.0;
};

// Throws Error on the empty set.
SalemResult SalemConstant(const PointSet& e);
SalemResult SalemConstant(const PointSet& e, const Spectrum& spectrum);

// max_{m != 0} |E^(m)| with its frequency.
SalemResult MaxNonzeroCoefficient(const Spectrum& spectrum);

// |sum_m |E^(m)|^2 - |E| / q^d|.
double PlancherelResidual(const PointSet& e);
double PlancherelResidual(const PointSet& e, const Spectrum& spectrum);

// CSV rows "m,re,im,modulus" with a header line.
void WriteSpectrumCsv(const Spectrum& spectrum, std::ostream& out);

}  // namespace fqdiff

#endif  // FQDIFF_SPECTRAL_H_
