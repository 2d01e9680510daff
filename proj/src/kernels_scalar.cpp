// Copyright 2026 The relay-dmt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relaydmt/kernels/dispatch.hpp"

namespace relaydmt::kernels {
namespace {

void philox_batch_scalar(PhiloxKey key, const PhiloxCtr* ctrs, std::size_t n,
                         std::uint32_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const PhiloxBlock b = philox4x32(key, ctrs[i]);
    out[4 * i + 0] = b[0];
    out[4 * i + 1] = b[1];
    out[4 * i + 2] = b[2];
    out[4 * i + 3] = b[3];
  }
}

void complex_abs2_scalar(const double* re, const double* im, std::size_t n,
                         double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = re[i] * re[i] + im[i] * im[i];
  }
}

void complex_mul_inplace_scalar(double* ar, double* ai, const double* br,
                                const double* bi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ar[i] * br[i] - ai[i] * bi[i];
    const double im = ar[i] * bi[i] + ai[i] * br[i];
    ar[i] = r;
    ai[i] = im;
  }
}

void add_inplace_scalar(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] += x[i];
  }
}

void max_inplace_scalar(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > acc[i]) acc[i] = x[i];
  }
}

std::size_t count_le_scalar(const double* x, std::size_t n, double bound) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] <= bound) ++c;
  }
  return c;
}

void mi_det_2x2_scalar(double snr, const double* ar, const double* ai,
                       const double* br, const double* bi, const double* cr,
                       const double* ci, const double* dr, const double* di,
                       std::size_t n, double* out) {
  // det(I + snr*MM^H) = (1+snr*p)(1+snr*q) - snr^2*|s|^2 with
  // p = |a|^2+|b|^2, q = |c|^2+|d|^2, s = a*conj(c) + b*conj(d).
  for (std::size_t i = 0; i < n; ++i) {
    const double p = ar[i] * ar[i] + ai[i] * ai[i] + br[i] * br[i] + bi[i] * bi[i];
    const double q = cr[i] * cr[i] + ci[i] * ci[i] + dr[i] * dr[i] + di[i] * di[i];
    const double sr = ar[i] * cr[i] + ai[i] * ci[i] + br[i] * dr[i] + bi[i] * di[i];
    const double si = ai[i] * cr[i] - ar[i] * ci[i] + bi[i] * dr[i] - br[i] * di[i];
    out[i] = (1.0 + snr * p) * (1.0 + snr * q) - snr * snr * (sr * sr + si * si);
  }
}

}  // namespace

const KernelTable& scalar_kernel_table() {
  static const KernelTable t = {
      philox_batch_scalar,    complex_abs2_scalar, complex_mul_inplace_scalar,
      add_inplace_scalar,     max_inplace_scalar,  count_le_scalar,
      mi_det_2x2_scalar,
  };
  return t;
}

}  // namespace relaydmt::kernels
