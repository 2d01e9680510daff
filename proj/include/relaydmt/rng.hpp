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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "relaydmt/kernels/philox.hpp"

namespace relaydmt {

// Counter-based random stream. The pair (seed, stream) fully determines
// the sequence: the seed forms the Philox key, the stream id occupies the
// high counter words, and a 64-bit block index advances per draw. Streams
// are independent, so Monte Carlo trial t can use stream id t and the
// result never depends on how trials are partitioned across workers.
//
// Every draw consumes exactly one 128-bit block:
//   uniform()  -> one double in (0,1)
//   normal()   -> one N(0,1) double
//   cn()       -> one CN(0,1) complex (real/imag each N(0, 1/2))
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  double uniform();
  double normal();
  std::complex<double> cn();

  // Bulk CN(0,1) fill; identical to n successive cn() calls.
  void fill_cn(std::complex<double>* out, std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t block_index() const { return block_; }

 private:
  kernels::PhiloxBlock next_block();

  std::uint64_t seed_;
  std::uint64_t stream_;
  kernels::PhiloxKey key_;
  std::uint64_t block_ = 0;
};

namespace detail {

// Maps a 64-bit word to the open interval (0,1).
inline double u64_to_unit_double(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

// Box-Muller pair from two (0,1) uniforms; z0, z1 are independent N(0,1).
void box_muller(double u1, double u2, double& z0, double& z1);

}  // namespace detail

}  // namespace relaydmt
