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

#pragma once

#include <cstddef>
#include <cstdint>

#include "relaydmt/kernels/philox.hpp"

namespace relaydmt::kernels {

// Batched inner-loop kernels used by the Monte Carlo engine. Every entry
// has a scalar reference implementation and may have an AVX2 variant.
// Variants are required to be bit-identical to the reference (each output
// element is computed with the same operation sequence, just several
// trials per register), which the kernel tests enforce.

enum class Arch {
  scalar,
  avx2,
};

struct KernelTable {
  // out[4*i..4*i+3] = philox4x32-10(key, ctrs[i]).
  void (*philox_batch)(PhiloxKey key, const PhiloxCtr* ctrs, std::size_t n,
                       std::uint32_t* out);

  // out[i] = re[i]^2 + im[i]^2.
  void (*complex_abs2)(const double* re, const double* im, std::size_t n,
                       double* out);

  // (ar,ai)[i] = (ar,ai)[i] * (br,bi)[i] as complex numbers.
  void (*complex_mul_inplace)(double* ar, double* ai, const double* br,
                              const double* bi, std::size_t n);

  // acc[i] += x[i].
  void (*add_inplace)(double* acc, const double* x, std::size_t n);

  // acc[i] = max(acc[i], x[i]).
  void (*max_inplace)(double* acc, const double* x, std::size_t n);

  // #{ i : x[i] <= bound }.
  std::size_t (*count_le)(const double* x, std::size_t n, double bound);

  // out[i] = det(I2 + snr * M_i M_i^H) for 2x2 complex M_i = [a b; c d],
  // entries given as structure-of-arrays.
  void (*mi_det_2x2)(double snr, const double* ar, const double* ai,
                     const double* br, const double* bi, const double* cr,
                     const double* ci, const double* dr, const double* di,
                     std::size_t n, double* out);
};

bool arch_available(Arch arch);
const KernelTable& table_for(Arch arch);
const char* arch_name(Arch arch);

// Active architecture: best available, unless overridden by the
// RELAY_DMT_KERNELS environment variable ("scalar" or "avx2").
Arch active_arch();
const KernelTable& table();

}  // namespace relaydmt::kernels
