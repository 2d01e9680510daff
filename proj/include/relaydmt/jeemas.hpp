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

#include "relaydmt/channel.hpp"

namespace relaydmt {

enum class CandidateMode {
  exhaustive,          // every size-m subset chain
  independent_family,  // the independent path family plus the P2 chain
};

enum class RateMode {
  scaled,  // threshold r * log2(SNR) bits
  fixed,   // threshold R bits, constant in SNR
};

struct RateSpec {
  RateMode mode = RateMode::fixed;
  double value = 1.0;  // multiplexing gain r (scaled) or rate R in bits

  double threshold_bits(SnrPoint s) const {
    return mode == RateMode::scaled ? value * std::log2(s.snr_linear) : value;
  }
  // The multiplexing gain the m-policy sees; a fixed rate does not grow
  // with SNR, so it corresponds to r = 0.
  double policy_r() const { return mode == RateMode::scaled ? value : 0.0; }
};

struct SelectionPolicy {
  CandidateMode candidate_mode = CandidateMode::exhaustive;
  bool hybrid_m = false;  // r = 0 -> m = 1, r > 0 -> m = min_n M_n
  int fixed_m = 1;
  std::uint64_t path_cap = 1u << 20;

  int resolve_m(const RelayTopology& t, double r) const {
    if (!hybrid_m) return fixed_m;
    return r > 0.0 ? t.min_antennas() : 1;
  }
};

struct SelectionResult {
  SubsetChain chosen;
  double mi_bits = 0.0;
  std::size_t candidate_count = 0;
  double feedback_bits = 0.0;
};

// Evaluates every candidate chain on the realization and returns the
// mutual-information maximizer (first in candidate order on ties; the
// candidate list is sorted lexicographically with the P2 chain last).
SelectionResult select_path(const ChannelSet& c, const RelayTopology& t,
                            SnrPoint s, const SelectionPolicy& pol, double r);

// Candidate list used by select_path, exposed for tests and the
// Monte Carlo fast paths.
std::vector<SubsetChain> candidate_chains(const RelayTopology& t, int m,
                                          const SelectionPolicy& pol);

// True when the selected chain's mutual information is at or below the
// rate threshold (r*log2 SNR in scaled mode, R in fixed mode).
bool outage_indicator(const SelectionResult& sel, SnrPoint s, RateSpec rate);

}  // namespace relaydmt
