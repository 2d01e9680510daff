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

#include "relaydmt/rng.hpp"

#include <cmath>
#include <numbers>

#include "relaydmt/kernels/dispatch.hpp"

namespace relaydmt {

namespace detail {

void box_muller(double u1, double u2, double& z0, double& z1) {
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(theta);
  z1 = r * std::sin(theta);
}

}  // namespace detail

namespace {

inline kernels::PhiloxCtr make_ctr(std::uint64_t block, std::uint64_t stream) {
  return {static_cast<std::uint32_t>(block),
          static_cast<std::uint32_t>(block >> 32),
          static_cast<std::uint32_t>(stream),
          static_cast<std::uint32_t>(stream >> 32)};
}

inline std::uint64_t join64(std::uint32_t lo, std::uint32_t hi) {
  return static_cast<std::uint64_t>(hi) << 32 | lo;
}

inline std::complex<double> block_to_cn(const std::uint32_t b[4]) {
  const double u1 = detail::u64_to_unit_double(join64(b[0], b[1]));
  const double u2 = detail::u64_to_unit_double(join64(b[2], b[3]));
  // CN(0,1): modulus squared is Exp(1), real/imag are N(0, 1/2).
  const double r = std::sqrt(-std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)} {}

kernels::PhiloxBlock RngStream::next_block() {
  return kernels::philox4x32(key_, make_ctr(block_++, stream_));
}

double RngStream::uniform() {
  const kernels::PhiloxBlock b = next_block();
  return detail::u64_to_unit_double(join64(b[0], b[1]));
}

double RngStream::normal() {
  const kernels::PhiloxBlock b = next_block();
  const double u1 = detail::u64_to_unit_double(join64(b[0], b[1]));
  const double u2 = detail::u64_to_unit_double(join64(b[2], b[3]));
  double z0, z1;
  detail::box_muller(u1, u2, z0, z1);
  (void)z1;
  return z0;
}

std::complex<double> RngStream::cn() {
  const kernels::PhiloxBlock b = next_block();
  return block_to_cn(b.data());
}

void RngStream::fill_cn(std::complex<double>* out, std::size_t n) {
  constexpr std::size_t kChunk = 256;
  kernels::PhiloxCtr ctrs[kChunk];
  std::uint32_t words[4 * kChunk];
  std::size_t done = 0;
  while (done < n) {
    const std::size_t take = std::min(kChunk, n - done);
    for (std::size_t i = 0; i < take; ++i) {
      ctrs[i] = make_ctr(block_ + i, stream_);
    }
    kernels::table().philox_batch(key_, ctrs, take, words);
    for (std::size_t i = 0; i < take; ++i) {
      out[done + i] = block_to_cn(words + 4 * i);
    }
    block_ += take;
    done += take;
  }
}

}  // namespace relaydmt
