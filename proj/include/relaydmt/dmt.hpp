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

#include <span>
#include <vector>

#include "relaydmt/topology.hpp"

namespace relaydmt {

// Piecewise-linear diversity-multiplexing curve. Evaluation interpolates
// between vertices and is zero beyond the last vertex; d is nonincreasing
// and the final vertex has d = 0.
struct DmtCurve {
  struct Vertex {
    double r;
    double d;
  };
  std::vector<Vertex> vertices;

  double max_r() const { return vertices.empty() ? 0.0 : vertices.back().r; }
};

double curve_eval(const DmtCurve& c, double r);

// Pointwise min/max across curves. The result's vertex set is the union
// of the inputs' vertices plus every crossing point, so evaluating the
// result reproduces the exact pointwise min/max (collinear vertices are
// pruned).
DmtCurve min_curves(std::span<const DmtCurve> curves);
DmtCurve max_curves(std::span<const DmtCurve> curves);

// d(r) = (Nt - r)(Nr - r) at integer r = 0..min(Nt, Nr).
DmtCurve dmt_mimo(int nt, int nr);

// Cut-set upper bound: pointwise min over hops of dmt_mimo(M_n, M_{n+1}).
DmtCurve dmt_upper_bound(const RelayTopology& t);

// Outage exponent of one m-antenna chain across `hops` hops:
//   d(r) = (m-r)(m+1-r)/2 + a(r)/2 * ((a(r)-1)*hops + 2 b(r)),
// a(r) = floor((m-r)/hops), b(r) = (m-r) mod hops.
DmtCurve dmt_chain(int m, int hops);

// Chain exponent for stage dimensions dims[0..N]; with beta-hat the sorted
// dims and d_min their minimum:
//   d(r) = sum_{k=r+1}^{d_min} [ 1 - k + min_{n=1..N}
//                                floor((sum_{l<=n} beta_hat_l - k)/n) ].
DmtCurve dmt_chain_mixed(const std::vector<int>& dims);

// Selection strategy exponent: kappa * dmt_chain plus the leftover-chain
// term when the P2 chain exists.
DmtCurve dmt_jeemas(const RelayTopology& t, int m);

// Two-mode strategy: d(0) from m = 1, d(r > 0) from m = min_n M_n.
// With envelope=true, the pointwise max of dmt_jeemas over all m instead.
DmtCurve dmt_hybrid(const RelayTopology& t, bool envelope);

// Transmit antenna selection for a point-to-point channel, Mt >= Mr;
// with Mt = alpha*Mr + beta:
//   d(r) = alpha (Mr-r)^2 + [(beta-r)(Mr-r)]^+.
DmtCurve dmt_p2p_selection(int mt, int mr);

// Two-hop cut-set bound with a direct link:
//   d(r) = min{(M0-r)(M1+M2-r), (M0+M1-r)(M2-r)}, r up to min(M0, M2).
DmtCurve dmt_cf_upper(int m0, int m1, int m2);

}  // namespace relaydmt
