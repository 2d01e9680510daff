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

#include "relaydmt/jeemas.hpp"

#include <algorithm>
#include <cmath>

namespace relaydmt {

namespace {

bool chain_less(const SubsetChain& a, const SubsetChain& b) {
  for (std::size_t n = 0; n < std::min(a.subsets.size(), b.subsets.size());
       ++n) {
    if (a.subsets[n].antennas != b.subsets[n].antennas) {
      return a.subsets[n].antennas < b.subsets[n].antennas;
    }
  }
  return a.subsets.size() < b.subsets.size();
}

}  // namespace

std::vector<SubsetChain> candidate_chains(const RelayTopology& t, int m,
                                          const SelectionPolicy& pol) {
  std::vector<SubsetChain> candidates;
  if (pol.candidate_mode == CandidateMode::exhaustive) {
    candidates = enumerate_paths(t, m, pol.path_cap);
  } else {
    PathFamily family = build_independent_paths(t, m);
    candidates = std::move(family.paths);
    std::sort(candidates.begin(), candidates.end(), chain_less);
    if (auto p2 = build_p2_chain(t, m)) {
      SubsetChain extra;
      extra.subsets = std::move(p2->subsets);
      candidates.push_back(std::move(extra));
    }
  }
  return candidates;
}

SelectionResult select_path(const ChannelSet& c, const RelayTopology& t,
                            SnrPoint s, const SelectionPolicy& pol, double r) {
  const int m = pol.resolve_m(t, r);
  const auto candidates = candidate_chains(t, m, pol);
  if (candidates.empty()) {
    throw InvalidSubsetSize("empty candidate set");
  }
  SelectionResult best;
  best.candidate_count = candidates.size();
  best.feedback_bits = std::log2(static_cast<double>(candidates.size()));
  bool first = true;
  for (const auto& cand : candidates) {
    const double mi = path_mutual_info(c, cand, s);
    if (first || mi > best.mi_bits) {
      best.chosen = cand;
      best.mi_bits = mi;
      first = false;
    }
  }
  return best;
}

bool outage_indicator(const SelectionResult& sel, SnrPoint s, RateSpec rate) {
  return sel.mi_bits <= rate.threshold_bits(s);
}

}  // namespace relaydmt
