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

#include <cmath>
#include <vector>

#include "relaydmt/linalg.hpp"
#include "relaydmt/topology.hpp"

namespace relaydmt {

struct SnrPoint {
  double snr_db = 0.0;
  double snr_linear = 1.0;

  static SnrPoint from_db(double db) {
    return {db, std::pow(10.0, db / 10.0)};
  }
  static SnrPoint from_linear(double lin) {
    return {10.0 * std::log10(lin), lin};
  }
};

// One block-fading realization: hops[n] is the full M_{n+1} x M_n matrix
// between stage n and stage n+1.
struct ChannelSet {
  std::vector<ComplexMatrix> hops;
};

// All hop matrices i.i.d. CN(0,1), sampled hop 0 first, each matrix filled
// column-major.
ChannelSet sample_channels(const RelayTopology& t, RngStream& rng);

// Submatrix of `m` with the given sorted row/column index sets.
ComplexMatrix submatrix(const ComplexMatrix& m, const std::vector<int>& rows,
                        const std::vector<int>& cols);

// Ordered product of per-hop submatrices along a chain; the hop N-1 factor
// is applied last, so the result maps stage-0 inputs to stage-N outputs.
ComplexMatrix path_product(const ChannelSet& c, const SubsetChain& p);

// log2 det(I + snr * P P^H) of the chain's product matrix, in bits.
double path_mutual_info(const ChannelSet& c, const SubsetChain& p,
                        SnrPoint s);

}  // namespace relaydmt
