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

#include <optional>
#include <string>
#include <vector>

#include "relaydmt/scenario.hpp"

namespace relaydmt {

// Exit codes: 0 success, 2 usage/config error, 3 unreliable statistics.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnreliable = 3;

struct RunArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed_override;
  int workers = 0;  // 0 = RELAY_DMT_WORKERS env or hardware concurrency
};

struct CompareArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> labels;  // optional; defaults to file stems
  std::string out_path;
};

int cmd_analytic(const RunArgs& args);
int cmd_simulate(const RunArgs& args);
int cmd_compare(const CompareArgs& args);

// Curve selector used by cmd_analytic, exposed for tests.
DmtCurve analytic_curve(const Scenario& sc);

}  // namespace relaydmt
