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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relaydmt/montecarlo.hpp"

namespace relaydmt {

struct SnrGridSpec {
  double start_db = 0.0;
  double stop_db = 0.0;
  double step_db = 1.0;

  std::vector<double> points() const;
};

// One experiment description, loaded from a JSON file. Unknown keys are
// rejected; per-command requirements are checked by the commands.
struct Scenario {
  enum class Kind { multihop, cf, p2p };

  Kind kind = Kind::multihop;
  std::vector<int> antennas;                    // multihop stages or [Nt, Nr]
  std::vector<std::vector<int>> relay_split;    // optional (multihop)
  CfScenario cf_dims;                           // kind == cf (snr filled later)

  std::string curve;                            // analytic selector
  std::optional<int> m;
  bool hybrid_policy = false;                   // "policy": "hybrid" | "fixed"
  CandidateMode candidate_mode = CandidateMode::exhaustive;
  bool fixed_path_strategy = false;             // "strategy": "fixed-path"
  bool selection = false;                       // p2p transmit selection
  bool envelope = false;                        // hybrid analytic variant
  std::uint64_t path_cap = 1u << 20;

  std::optional<SnrGridSpec> snr_grid;
  std::optional<RateSpec> rate;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<FitWindow> fit_window;

  RelayTopology topology() const;           // multihop kinds
  SelectionPolicy selection_policy() const; // multihop kinds
  std::unique_ptr<OutageModel> build_model() const;
};

// Parses and validates a scenario file; throws ConfigError.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_json(const std::string& text, const std::string& origin);

}  // namespace relaydmt
