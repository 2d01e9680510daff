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

// AVX2 kernel variants. Every routine mirrors the scalar reference
// operation-for-operation (multiplies and adds in the same order, no FMA
// contraction), so outputs are bit-identical; the tail of each loop falls
// back to the scalar reference.

#include "relaydmt/kernels/dispatch.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace relaydmt::kernels {

const KernelTable& scalar_kernel_table();

namespace {

__attribute__((target("avx2"))) void philox_batch_avx2(PhiloxKey key,
                                                       const PhiloxCtr* ctrs,
                                                       std::size_t n,
                                                       std::uint32_t* out) {
  const __m256i gather_idx = _mm256_setr_epi32(0, 4, 8, 12, 16, 20, 24, 28);
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
  const __m256i w0 = _mm256_set1_epi32(static_cast<int>(kPhiloxW0));
  const __m256i w1 = _mm256_set1_epi32(static_cast<int>(kPhiloxW1));

  // mulhilo across 8 lanes: even-lane and odd-lane 32x32->64 products,
  // then re-interleave the halves.
  const auto mul_lo = [](__m256i a, __m256i m) {
    const __m256i pe = _mm256_mul_epu32(m, a);
    const __m256i po = _mm256_mul_epu32(m, _mm256_srli_epi64(a, 32));
    return _mm256_blend_epi32(pe, _mm256_slli_epi64(po, 32), 0xAA);
  };
  const auto mul_hi = [](__m256i a, __m256i m) {
    const __m256i pe = _mm256_mul_epu32(m, a);
    const __m256i po = _mm256_mul_epu32(m, _mm256_srli_epi64(a, 32));
    return _mm256_blend_epi32(_mm256_srli_epi64(pe, 32), po, 0xAA);
  };

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const int* base = reinterpret_cast<const int*>(ctrs + i);
    __m256i c0 = _mm256_i32gather_epi32(base + 0, gather_idx, 4);
    __m256i c1 = _mm256_i32gather_epi32(base + 1, gather_idx, 4);
    __m256i c2 = _mm256_i32gather_epi32(base + 2, gather_idx, 4);
    __m256i c3 = _mm256_i32gather_epi32(base + 3, gather_idx, 4);
    __m256i k0 = _mm256_set1_epi32(static_cast<int>(key.k0));
    __m256i k1 = _mm256_set1_epi32(static_cast<int>(key.k1));

    for (int round = 0; round < 10; ++round) {
      const __m256i lo0 = mul_lo(c0, m0);
      const __m256i hi0 = mul_hi(c0, m0);
      const __m256i lo1 = mul_lo(c2, m1);
      const __m256i hi1 = mul_hi(c2, m1);
      const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
      const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
      c0 = n0;
      c1 = lo1;
      c2 = n2;
      c3 = lo0;
      k0 = _mm256_add_epi32(k0, w0);
      k1 = _mm256_add_epi32(k1, w1);
    }

    alignas(32) std::uint32_t t0[8], t1[8], t2[8], t3[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(t0), c0);
    _mm256_store_si256(reinterpret_cast<__m256i*>(t1), c1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(t2), c2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(t3), c3);
    for (std::size_t j = 0; j < 8; ++j) {
      out[4 * (i + j) + 0] = t0[j];
      out[4 * (i + j) + 1] = t1[j];
      out[4 * (i + j) + 2] = t2[j];
      out[4 * (i + j) + 3] = t3[j];
    }
  }
  if (i < n) {
    scalar_kernel_table().philox_batch(key, ctrs + i, n - i, out + 4 * i);
  }
}

__attribute__((target("avx2"))) void complex_abs2_avx2(const double* re,
                                                       const double* im,
                                                       std::size_t n,
                                                       double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    const __m256d v =
        _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m));
    _mm256_storeu_pd(out + i, v);
  }
  if (i < n) scalar_kernel_table().complex_abs2(re + i, im + i, n - i, out + i);
}

__attribute__((target("avx2"))) void complex_mul_inplace_avx2(
    double* ar, double* ai, const double* br, const double* bi,
    std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d yr = _mm256_loadu_pd(br + i);
    const __m256d yi = _mm256_loadu_pd(bi + i);
    const __m256d r =
        _mm256_sub_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi));
    const __m256d m =
        _mm256_add_pd(_mm256_mul_pd(xr, yi), _mm256_mul_pd(xi, yr));
    _mm256_storeu_pd(ar + i, r);
    _mm256_storeu_pd(ai + i, m);
  }
  if (i < n) {
    scalar_kernel_table().complex_mul_inplace(ar + i, ai + i, br + i, bi + i,
                                              n - i);
  }
}

__attribute__((target("avx2"))) void add_inplace_avx2(double* acc,
                                                      const double* x,
                                                      std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
  }
  if (i < n) scalar_kernel_table().add_inplace(acc + i, x + i, n - i);
}

__attribute__((target("avx2"))) void max_inplace_avx2(double* acc,
                                                      const double* x,
                                                      std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        acc + i, _mm256_max_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
  }
  if (i < n) scalar_kernel_table().max_inplace(acc + i, x + i, n - i);
}

__attribute__((target("avx2"))) std::size_t count_le_avx2(const double* x,
                                                          std::size_t n,
                                                          double bound) {
  const __m256d b = _mm256_set1_pd(bound);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cmp = _mm256_cmp_pd(_mm256_loadu_pd(x + i), b, _CMP_LE_OQ);
    c += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(cmp)));
  }
  if (i < n) c += scalar_kernel_table().count_le(x + i, n - i, bound);
  return c;
}

__attribute__((target("avx2"))) void mi_det_2x2_avx2(
    double snr, const double* ar, const double* ai, const double* br,
    const double* bi, const double* cr, const double* ci, const double* dr,
    const double* di, std::size_t n, double* out) {
  const __m256d vsnr = _mm256_set1_pd(snr);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xar = _mm256_loadu_pd(ar + i);
    const __m256d xai = _mm256_loadu_pd(ai + i);
    const __m256d xbr = _mm256_loadu_pd(br + i);
    const __m256d xbi = _mm256_loadu_pd(bi + i);
    const __m256d xcr = _mm256_loadu_pd(cr + i);
    const __m256d xci = _mm256_loadu_pd(ci + i);
    const __m256d xdr = _mm256_loadu_pd(dr + i);
    const __m256d xdi = _mm256_loadu_pd(di + i);
    // Same association order as the scalar reference: ((t1+t2)+t3)+t4.
    const __m256d p = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(xar, xar),
                                    _mm256_mul_pd(xai, xai)),
                      _mm256_mul_pd(xbr, xbr)),
        _mm256_mul_pd(xbi, xbi));
    const __m256d q = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(xcr, xcr),
                                    _mm256_mul_pd(xci, xci)),
                      _mm256_mul_pd(xdr, xdr)),
        _mm256_mul_pd(xdi, xdi));
    const __m256d sr = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(xar, xcr),
                                    _mm256_mul_pd(xai, xci)),
                      _mm256_mul_pd(xbr, xdr)),
        _mm256_mul_pd(xbi, xdi));
    const __m256d si = _mm256_sub_pd(
        _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(xai, xcr),
                                    _mm256_mul_pd(xar, xci)),
                      _mm256_mul_pd(xbi, xdr)),
        _mm256_mul_pd(xbr, xdi));
    const __m256d left =
        _mm256_mul_pd(_mm256_add_pd(one, _mm256_mul_pd(vsnr, p)),
                      _mm256_add_pd(one, _mm256_mul_pd(vsnr, q)));
    const __m256d right = _mm256_mul_pd(
        _mm256_mul_pd(vsnr, vsnr),
        _mm256_add_pd(_mm256_mul_pd(sr, sr), _mm256_mul_pd(si, si)));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(left, right));
  }
  if (i < n) {
    scalar_kernel_table().mi_det_2x2(snr, ar + i, ai + i, br + i, bi + i,
                                     cr + i, ci + i, dr + i, di + i, n - i,
                                     out + i);
  }
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

const KernelTable& avx2_kernel_table() {
  static const KernelTable t = {
      philox_batch_avx2,  complex_abs2_avx2, complex_mul_inplace_avx2,
      add_inplace_avx2,   max_inplace_avx2,  count_le_avx2,
      mi_det_2x2_avx2,
  };
  return t;
}

}  // namespace relaydmt::kernels

#else  // non-x86 fallback

namespace relaydmt::kernels {

const KernelTable& scalar_kernel_table();

bool avx2_supported() { return false; }

const KernelTable& avx2_kernel_table() { return scalar_kernel_table(); }

}  // namespace relaydmt::kernels

#endif
