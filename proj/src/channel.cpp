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

#include "relaydmt/channel.hpp"

namespace relaydmt {

ChannelSet sample_channels(const RelayTopology& t, RngStream& rng) {
  t.validate();
  ChannelSet c;
  c.hops.reserve(static_cast<std::size_t>(t.hops()));
  for (int n = 0; n < t.hops(); ++n) {
    c.hops.push_back(
        sample_cn_matrix(t.stage_antennas[static_cast<std::size_t>(n) + 1],
                         t.stage_antennas[static_cast<std::size_t>(n)], rng));
  }
  return c;
}

ComplexMatrix submatrix(const ComplexMatrix& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  ComplexMatrix out(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= m.rows()) {
      throw DimensionMismatch("row index out of range");
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= m.cols()) {
        throw DimensionMismatch("column index out of range");
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(rows[i], cols[j]);
    }
  }
  return out;
}

ComplexMatrix path_product(const ChannelSet& c, const SubsetChain& p) {
  if (p.subsets.size() != c.hops.size() + 1) {
    throw DimensionMismatch("chain stage count does not match channel set");
  }
  ComplexMatrix acc;
  for (std::size_t n = 0; n < c.hops.size(); ++n) {
    const ComplexMatrix factor = submatrix(
        c.hops[n], p.subsets[n + 1].antennas, p.subsets[n].antennas);
    acc = (n == 0) ? factor : ComplexMatrix(factor * acc);
  }
  return acc;
}

double path_mutual_info(const ChannelSet& c, const SubsetChain& p,
                        SnrPoint s) {
  return mutual_info_bits(s.snr_linear, path_product(c, p));
}

}  // namespace relaydmt
