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

#include "relaydmt/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace relaydmt {

double curve_eval(const DmtCurve& c, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("curve_eval requires r >= 0");
  if (c.vertices.empty()) return 0.0;
  if (r <= c.vertices.front().r) return c.vertices.front().d;
  if (r >= c.vertices.back().r) {
    return r == c.vertices.back().r ? c.vertices.back().d : 0.0;
  }
  for (std::size_t i = 1; i < c.vertices.size(); ++i) {
    const auto& lo = c.vertices[i - 1];
    const auto& hi = c.vertices[i];
    if (r <= hi.r) {
      const double w = (r - lo.r) / (hi.r - lo.r);
      return lo.d + w * (hi.d - lo.d);
    }
  }
  return 0.0;
}

namespace {

constexpr double kGridEps = 1e-12;

DmtCurve envelope_curves(std::span<const DmtCurve> curves, bool take_max) {
  if (curves.empty()) throw std::invalid_argument("no curves");
  // Union grid of all vertices.
  std::vector<double> grid;
  for (const auto& c : curves) {
    for (const auto& v : c.vertices) grid.push_back(v.r);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) <= kGridEps; }),
             grid.end());

  // Every curve is linear between adjacent grid values; add pairwise
  // crossing points so the envelope is exact between grid values too.
  std::vector<double> refined = grid;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double r0 = grid[g - 1];
    const double r1 = grid[g];
    for (std::size_t i = 0; i < curves.size(); ++i) {
      for (std::size_t j = i + 1; j < curves.size(); ++j) {
        const double a0 = curve_eval(curves[i], r0) - curve_eval(curves[j], r0);
        const double a1 = curve_eval(curves[i], r1) - curve_eval(curves[j], r1);
        if ((a0 > kGridEps && a1 < -kGridEps) ||
            (a0 < -kGridEps && a1 > kGridEps)) {
          refined.push_back(r0 + (r1 - r0) * (a0 / (a0 - a1)));
        }
      }
    }
  }
  std::sort(refined.begin(), refined.end());
  refined.erase(std::unique(refined.begin(), refined.end(),
                            [](double a, double b) {
                              return std::abs(a - b) <= kGridEps;
                            }),
                refined.end());

  DmtCurve out;
  for (double r : refined) {
    double d = curve_eval(curves[0], r);
    for (std::size_t i = 1; i < curves.size(); ++i) {
      const double v = curve_eval(curves[i], r);
      d = take_max ? std::max(d, v) : std::min(d, v);
    }
    out.vertices.push_back({r, d});
  }

  // Drop collinear interior vertices and trailing zero-slope tail.
  std::vector<DmtCurve::Vertex> pruned;
  for (const auto& v : out.vertices) {
    while (pruned.size() >= 2) {
      const auto& a = pruned[pruned.size() - 2];
      const auto& b = pruned.back();
      const double w = (b.r - a.r) / (v.r - a.r);
      const double interp = a.d + w * (v.d - a.d);
      if (std::abs(interp - b.d) <= 1e-12 * std::max(1.0, std::abs(b.d))) {
        pruned.pop_back();
      } else {
        break;
      }
    }
    pruned.push_back(v);
  }
  while (pruned.size() >= 2 && pruned.back().d == 0.0 &&
         pruned[pruned.size() - 2].d == 0.0) {
    pruned.pop_back();
  }
  out.vertices = std::move(pruned);
  return out;
}

DmtCurve from_integer_values(const std::vector<double>& d) {
  DmtCurve c;
  for (std::size_t r = 0; r < d.size(); ++r) {
    c.vertices.push_back({static_cast<double>(r), d[r]});
  }
  return c;
}

}  // namespace

DmtCurve min_curves(std::span<const DmtCurve> curves) {
  return envelope_curves(curves, false);
}

DmtCurve max_curves(std::span<const DmtCurve> curves) {
  return envelope_curves(curves, true);
}

DmtCurve dmt_mimo(int nt, int nr) {
  if (nt < 1 || nr < 1) throw std::invalid_argument("antenna counts >= 1");
  const int rmax = std::min(nt, nr);
  std::vector<double> d;
  for (int r = 0; r <= rmax; ++r) {
    d.push_back(static_cast<double>((nt - r) * (nr - r)));
  }
  return from_integer_values(d);
}

DmtCurve dmt_upper_bound(const RelayTopology& t) {
  t.validate();
  std::vector<DmtCurve> hops;
  for (int n = 0; n < t.hops(); ++n) {
    hops.push_back(dmt_mimo(t.stage_antennas[static_cast<std::size_t>(n)],
                            t.stage_antennas[static_cast<std::size_t>(n) + 1]));
  }
  return min_curves(hops);
}

DmtCurve dmt_chain(int m, int hops) {
  if (m < 1 || hops < 1) throw std::invalid_argument("dmt_chain needs m, hops >= 1");
  std::vector<double> d;
  for (int r = 0; r <= m; ++r) {
    const int a = (m - r) / hops;
    const int b = (m - r) % hops;
    const int twice = (m - r) * (m + 1 - r) + a * ((a - 1) * hops + 2 * b);
    d.push_back(static_cast<double>(twice) / 2.0);
  }
  return from_integer_values(d);
}

DmtCurve dmt_chain_mixed(const std::vector<int>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("need at least two stages");
  for (int v : dims) {
    if (v < 1) throw std::invalid_argument("stage dims must be >= 1");
  }
  const int n_hops = static_cast<int>(dims.size()) - 1;
  std::vector<int> sorted = dims;
  std::sort(sorted.begin(), sorted.end());
  const int d_min = sorted.front();
  std::vector<long long> prefix(sorted.size());
  std::partial_sum(sorted.begin(), sorted.end(), prefix.begin());

  std::vector<double> d;
  for (int r = 0; r <= d_min; ++r) {
    long long total = 0;
    for (int k = r + 1; k <= d_min; ++k) {
      long long best = std::numeric_limits<long long>::max();
      for (int n = 1; n <= n_hops; ++n) {
        best = std::min(best, (prefix[static_cast<std::size_t>(n)] - k) / n);
      }
      total += 1 - k + best;
    }
    d.push_back(static_cast<double>(total));
  }
  return from_integer_values(d);
}

DmtCurve dmt_jeemas(const RelayTopology& t, int m) {
  const int kappa = max_independent_paths(t, m);
  const DmtCurve chain = dmt_chain(m, t.hops());
  const auto p2 = build_p2_chain(t, m);
  DmtCurve mixed;
  if (p2) mixed = dmt_chain_mixed(p2->dims);

  std::vector<double> d;
  for (int r = 0; r <= m; ++r) {
    double v = kappa * curve_eval(chain, static_cast<double>(r));
    if (p2) {
      v += std::max(0.0, curve_eval(mixed, static_cast<double>(r)));
    }
    d.push_back(v);
  }
  return from_integer_values(d);
}

DmtCurve dmt_hybrid(const RelayTopology& t, bool envelope) {
  t.validate();
  const int m_max = t.min_antennas();
  if (envelope) {
    std::vector<DmtCurve> all;
    for (int m = 1; m <= m_max; ++m) all.push_back(dmt_jeemas(t, m));
    return max_curves(all);
  }
  const DmtCurve at_one = dmt_jeemas(t, 1);
  const DmtCurve at_max = dmt_jeemas(t, m_max);
  DmtCurve out;
  out.vertices.push_back({0.0, at_one.vertices.front().d});
  for (std::size_t i = 1; i < at_max.vertices.size(); ++i) {
    out.vertices.push_back(at_max.vertices[i]);
  }
  return out;
}

DmtCurve dmt_p2p_selection(int mt, int mr) {
  if (mr < 1 || mt < mr) {
    throw RequiresMtGeMr("transmit selection needs Mt >= Mr >= 1");
  }
  const int alpha = mt / mr;
  const int beta = mt % mr;
  std::vector<double> d;
  for (int r = 0; r <= mr; ++r) {
    const int base = alpha * (mr - r) * (mr - r);
    const int extra = std::max(0, (beta - r) * (mr - r));
    d.push_back(static_cast<double>(base + extra));
  }
  return from_integer_values(d);
}

DmtCurve dmt_cf_upper(int m0, int m1, int m2) {
  if (m0 < 1 || m1 < 1 || m2 < 1) {
    throw std::invalid_argument("antenna counts >= 1");
  }
  const DmtCurve a = dmt_mimo(m0, m1 + m2);
  const DmtCurve b = dmt_mimo(m0 + m1, m2);
  const DmtCurve curves[] = {a, b};
  return min_curves(curves);
}

}  // namespace relaydmt
