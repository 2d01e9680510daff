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

#include <cstdint>
#include <optional>
#include <vector>

#include "relaydmt/errors.hpp"

namespace relaydmt {

// Antenna structure of an N-hop relay network: stage 0 is the source,
// stage N the destination, stages in between are relay stages. An
// optional per-stage split records how a relay stage's antennas are
// distributed over its relay nodes.
struct RelayTopology {
  std::vector<int> stage_antennas;                     // M_0 .. M_N
  std::vector<std::vector<int>> relay_split;           // optional, per stage

  int hops() const { return static_cast<int>(stage_antennas.size()) - 1; }
  int stages() const { return static_cast<int>(stage_antennas.size()); }
  int min_antennas() const;
  void validate() const;  // throws DimensionMismatch on bad structure
};

// A set of antenna indices (0-based, sorted) at one stage.
struct AntennaSubset {
  int stage = 0;
  std::vector<int> antennas;
};

// A chain of per-stage antenna subsets. Uniform-size chains (one size-m
// subset per stage) are what the selection strategy enumerates; the
// leftover-antenna chain built by build_p2_chain has alternating sizes.
struct SubsetChain {
  std::vector<AntennaSubset> subsets;

  bool uniform_size(int m) const;
};

using Path = SubsetChain;

enum class IndependenceMode {
  stagewise_disjoint,            // S_k(n) and S_l(n) disjoint at every stage
  hopwise_coefficient_disjoint,  // per-hop coefficient index products disjoint
};

struct PathFamily {
  std::vector<Path> paths;
  IndependenceMode mode = IndependenceMode::hopwise_coefficient_disjoint;
};

// Leftover-antenna chain: dims[n] = m on even stages and beta_n on odd
// stages, realized with the trailing antennas of each stage so its
// coefficients are disjoint from every block-aligned path family.
struct P2Chain {
  std::vector<int> dims;
  std::vector<AntennaSubset> subsets;
};

// Pairwise independence checkers.
bool stagewise_disjoint(const Path& a, const Path& b);
bool hopwise_coefficient_disjoint(const Path& a, const Path& b);

// Maximum number of independent paths with subset size m:
//   min over hops n of floor(M_n/m) * floor(M_{n+1}/m).
int max_independent_paths(const RelayTopology& t, int m);

// Builds exactly max_independent_paths(t, m) paths whose per-hop
// coefficient sets are pairwise disjoint. Each stage is partitioned into
// floor(M_n/m) blocks of m consecutive antennas and hop (block, block)
// pairs are assigned without repetition.
PathFamily build_independent_paths(const RelayTopology& t, int m);

// Leftover chain through the trailing antennas; absent when some
// odd-stage remainder beta_n is zero.
std::optional<P2Chain> build_p2_chain(const RelayTopology& t, int m);

// All size-m subset chains in lexicographic order. Throws TooManyPaths if
// the count would exceed `cap`.
std::vector<Path> enumerate_paths(const RelayTopology& t, int m,
                                  std::uint64_t cap);

// Number of chains enumerate_paths would produce (saturating).
std::uint64_t count_paths(const RelayTopology& t, int m);

}  // namespace relaydmt
