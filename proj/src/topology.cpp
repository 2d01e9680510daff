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

#include "relaydmt/topology.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <string>

namespace relaydmt {

int RelayTopology::min_antennas() const {
  return *std::min_element(stage_antennas.begin(), stage_antennas.end());
}

void RelayTopology::validate() const {
  if (stage_antennas.size() < 2) {
    throw DimensionMismatch("topology needs at least source and destination");
  }
  for (int m : stage_antennas) {
    if (m < 1) throw DimensionMismatch("every stage needs >= 1 antenna");
  }
  if (!relay_split.empty()) {
    if (relay_split.size() != stage_antennas.size()) {
      throw DimensionMismatch("relay_split must cover every stage");
    }
    for (std::size_t n = 0; n < relay_split.size(); ++n) {
      int sum = 0;
      for (int v : relay_split[n]) {
        if (v < 1) throw DimensionMismatch("relay antenna counts must be >= 1");
        sum += v;
      }
      if (sum != stage_antennas[n]) {
        throw DimensionMismatch("relay_split must sum to the stage total");
      }
    }
  }
}

bool SubsetChain::uniform_size(int m) const {
  for (const auto& s : subsets) {
    if (static_cast<int>(s.antennas.size()) != m) return false;
  }
  return true;
}

namespace {

void check_subset_size(const RelayTopology& t, int m) {
  t.validate();
  if (m < 1 || m > t.min_antennas()) {
    throw InvalidSubsetSize("subset size m=" + std::to_string(m) +
                            " outside [1, min_n M_n]");
  }
}

bool sorted_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

std::vector<int> block_antennas(int block, int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), block * m);
  return v;
}

// Balanced per-stage load: how many of the alpha paths pass through each
// antenna block of the stage.
std::vector<int> balanced_loads(int alpha, int groups) {
  std::vector<int> c(static_cast<std::size_t>(groups), alpha / groups);
  for (int v = 0; v < alpha % groups; ++v) ++c[static_cast<std::size_t>(v)];
  return c;
}

// Distinct bipartite edges realizing the given left/right degrees
// (Gale-Ryser greedy: each left vertex takes the rights with the largest
// remaining degree, lowest index first). Returns edges sorted (left, right).
std::vector<std::pair<int, int>> realize_degrees(const std::vector<int>& left,
                                                 const std::vector<int>& right) {
  std::vector<int> residual = right;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < static_cast<int>(left.size()); ++v) {
    std::vector<int> order(right.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return residual[static_cast<std::size_t>(a)] >
             residual[static_cast<std::size_t>(b)];
    });
    std::vector<int> picked;
    for (int w : order) {
      if (static_cast<int>(picked.size()) == left[static_cast<std::size_t>(v)])
        break;
      if (residual[static_cast<std::size_t>(w)] > 0) picked.push_back(w);
    }
    if (static_cast<int>(picked.size()) != left[static_cast<std::size_t>(v)]) {
      throw std::logic_error("degree sequence realization failed");
    }
    std::sort(picked.begin(), picked.end());
    for (int w : picked) {
      --residual[static_cast<std::size_t>(w)];
      edges.emplace_back(v, w);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

bool stagewise_disjoint(const Path& a, const Path& b) {
  if (a.subsets.size() != b.subsets.size()) return false;
  for (std::size_t n = 0; n < a.subsets.size(); ++n) {
    if (!sorted_disjoint(a.subsets[n].antennas, b.subsets[n].antennas)) {
      return false;
    }
  }
  return true;
}

bool hopwise_coefficient_disjoint(const Path& a, const Path& b) {
  if (a.subsets.size() != b.subsets.size()) return false;
  // Product sets S_n x S_{n+1} are disjoint iff one factor is disjoint.
  for (std::size_t n = 0; n + 1 < a.subsets.size(); ++n) {
    const bool tx_disjoint =
        sorted_disjoint(a.subsets[n].antennas, b.subsets[n].antennas);
    const bool rx_disjoint =
        sorted_disjoint(a.subsets[n + 1].antennas, b.subsets[n + 1].antennas);
    if (!tx_disjoint && !rx_disjoint) return false;
  }
  return true;
}

int max_independent_paths(const RelayTopology& t, int m) {
  check_subset_size(t, m);
  int best = std::numeric_limits<int>::max();
  for (int n = 0; n < t.hops(); ++n) {
    const int g0 = t.stage_antennas[static_cast<std::size_t>(n)] / m;
    const int g1 = t.stage_antennas[static_cast<std::size_t>(n) + 1] / m;
    best = std::min(best, g0 * g1);
  }
  return best;
}

PathFamily build_independent_paths(const RelayTopology& t, int m) {
  const int alpha = max_independent_paths(t, m);
  const int stages = t.stages();
  std::vector<int> groups(static_cast<std::size_t>(stages));
  for (int n = 0; n < stages; ++n) {
    groups[static_cast<std::size_t>(n)] =
        t.stage_antennas[static_cast<std::size_t>(n)] / m;
  }

  // Per-stage balanced loads; then per hop a set of distinct (block, block)
  // edges realizing the adjacent loads; finally thread edges into paths.
  std::vector<std::vector<int>> loads(static_cast<std::size_t>(stages));
  for (int n = 0; n < stages; ++n) {
    loads[static_cast<std::size_t>(n)] =
        balanced_loads(alpha, groups[static_cast<std::size_t>(n)]);
  }

  std::vector<std::vector<int>> assign(
      static_cast<std::size_t>(alpha),
      std::vector<int>(static_cast<std::size_t>(stages), -1));
  for (int n = 0; n < stages - 1; ++n) {
    auto edges = realize_degrees(loads[static_cast<std::size_t>(n)],
                                 loads[static_cast<std::size_t>(n) + 1]);
    if (n == 0) {
      for (int j = 0; j < alpha; ++j) {
        assign[static_cast<std::size_t>(j)][0] =
            edges[static_cast<std::size_t>(j)].first;
        assign[static_cast<std::size_t>(j)][1] =
            edges[static_cast<std::size_t>(j)].second;
      }
    } else {
      // Bucket paths by current endpoint and hand out this hop's edges
      // with the matching left block, lowest path index first.
      std::vector<std::vector<int>> waiting(
          static_cast<std::size_t>(groups[static_cast<std::size_t>(n)]));
      for (int j = 0; j < alpha; ++j) {
        waiting[static_cast<std::size_t>(
                    assign[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                        n)])]
            .push_back(j);
      }
      std::vector<std::size_t> cursor(waiting.size(), 0);
      for (const auto& [v, w] : edges) {
        auto& queue = waiting[static_cast<std::size_t>(v)];
        assert(cursor[static_cast<std::size_t>(v)] < queue.size());
        const int j = queue[cursor[static_cast<std::size_t>(v)]++];
        assign[static_cast<std::size_t>(j)][static_cast<std::size_t>(n) + 1] = w;
      }
    }
  }

  PathFamily family;
  family.mode = IndependenceMode::hopwise_coefficient_disjoint;
  family.paths.reserve(static_cast<std::size_t>(alpha));
  for (int j = 0; j < alpha; ++j) {
    Path p;
    for (int n = 0; n < stages; ++n) {
      p.subsets.push_back(
          {n, block_antennas(
                  assign[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)],
                  m)});
    }
    family.paths.push_back(std::move(p));
  }

  for (std::size_t a = 0; a < family.paths.size(); ++a) {
    for (std::size_t b = a + 1; b < family.paths.size(); ++b) {
      if (!hopwise_coefficient_disjoint(family.paths[a], family.paths[b])) {
        throw std::logic_error("independent path construction violated "
                               "hopwise disjointness");
      }
    }
  }
  return family;
}

std::optional<P2Chain> build_p2_chain(const RelayTopology& t, int m) {
  check_subset_size(t, m);
  const int stages = t.stages();
  for (int n = 1; n < stages; n += 2) {
    if (t.stage_antennas[static_cast<std::size_t>(n)] % m == 0) {
      return std::nullopt;
    }
  }
  P2Chain chain;
  chain.dims.resize(static_cast<std::size_t>(stages));
  for (int n = 0; n < stages; ++n) {
    const int mn = t.stage_antennas[static_cast<std::size_t>(n)];
    const int width = (n % 2 == 0) ? m : mn % m;
    chain.dims[static_cast<std::size_t>(n)] = width;
    std::vector<int> antennas(static_cast<std::size_t>(width));
    std::iota(antennas.begin(), antennas.end(), mn - width);
    chain.subsets.push_back({n, std::move(antennas)});
  }
  return chain;
}

std::uint64_t count_paths(const RelayTopology& t, int m) {
  check_subset_size(t, m);
  const auto choose = [](int n, int k) -> std::uint64_t {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
      r = r * static_cast<std::uint64_t>(n - i) /
          static_cast<std::uint64_t>(i + 1);
    }
    return r;
  };
  std::uint64_t total = 1;
  for (int mn : t.stage_antennas) {
    const std::uint64_t c = choose(mn, m);
    if (total > std::numeric_limits<std::uint64_t>::max() / c) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= c;
  }
  return total;
}

std::vector<Path> enumerate_paths(const RelayTopology& t, int m,
                                  std::uint64_t cap) {
  const std::uint64_t total = count_paths(t, m);
  if (total > cap) {
    throw TooManyPaths("path count " + std::to_string(total) +
                       " exceeds cap " + std::to_string(cap));
  }

  // Lexicographic subsets per stage, then the lexicographic product with
  // stage 0 as the most significant position.
  const int stages = t.stages();
  std::vector<std::vector<std::vector<int>>> stage_subsets(
      static_cast<std::size_t>(stages));
  for (int n = 0; n < stages; ++n) {
    const int mn = t.stage_antennas[static_cast<std::size_t>(n)];
    std::vector<int> comb(static_cast<std::size_t>(m));
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      stage_subsets[static_cast<std::size_t>(n)].push_back(comb);
      int i = m - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == mn - m + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) {
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j) - 1] + 1;
      }
    }
  }

  std::vector<Path> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> idx(static_cast<std::size_t>(stages), 0);
  while (true) {
    Path p;
    for (int n = 0; n < stages; ++n) {
      p.subsets.push_back(
          {n, stage_subsets[static_cast<std::size_t>(n)]
                           [idx[static_cast<std::size_t>(n)]]});
    }
    out.push_back(std::move(p));
    int n = stages - 1;
    while (n >= 0) {
      if (++idx[static_cast<std::size_t>(n)] <
          stage_subsets[static_cast<std::size_t>(n)].size()) {
        break;
      }
      idx[static_cast<std::size_t>(n)] = 0;
      --n;
    }
    if (n < 0) break;
  }
  return out;
}

}  // namespace relaydmt
