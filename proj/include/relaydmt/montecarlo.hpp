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
#include <span>
#include <utility>
#include <vector>

#include "relaydmt/cf.hpp"
#include "relaydmt/jeemas.hpp"

namespace relaydmt {

struct OutageEstimate {
  SnrPoint snr;
  std::uint64_t trials = 0;
  std::uint64_t outage_events = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // 95% Wilson interval
  double ci_high = 0.0;
};

struct ExponentFit {
  double slope = 0.0;      // fitted -d
  double stderr_ = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  bool reliable = false;
};

struct FitWindow {
  double start_db = 0.0;
  double stop_db = 0.0;
};

// `generic` forces the straightforward per-trial path; `automatic` lets a
// model route eligible scenarios through the batched SIMD kernels. Both
// consume identical random streams, so counts agree.
enum class KernelPolicy {
  automatic,
  generic,
};

// A strategy that can classify trial t of an experiment as outage or not.
// Trial t draws from RngStream(seed, t), so any partition of the trial
// range yields the same events.
class OutageModel {
 public:
  virtual ~OutageModel() = default;
  virtual std::uint64_t count_outages(SnrPoint s, RateSpec rate,
                                      std::uint64_t seed, std::uint64_t t0,
                                      std::uint64_t t1,
                                      KernelPolicy kp) const = 0;
};

// Point-to-point MIMO, optionally with transmit antenna selection down to
// the receive antenna count.
class P2pModel final : public OutageModel {
 public:
  P2pModel(int nt, int nr, bool selection);
  std::uint64_t count_outages(SnrPoint s, RateSpec rate, std::uint64_t seed,
                              std::uint64_t t0, std::uint64_t t1,
                              KernelPolicy kp) const override;

 private:
  int nt_;
  int nr_;
  bool selection_;
};

// Multi-hop amplify-and-forward chain with subset selection, or a pinned
// first path when fixed_path is set.
class MultihopModel final : public OutageModel {
 public:
  MultihopModel(RelayTopology t, SelectionPolicy pol, bool fixed_path);
  std::uint64_t count_outages(SnrPoint s, RateSpec rate, std::uint64_t seed,
                              std::uint64_t t0, std::uint64_t t1,
                              KernelPolicy kp) const override;

 private:
  RelayTopology topology_;
  SelectionPolicy policy_;
  bool fixed_path_;
};

// Distributed compress-and-forward two-hop channel. NoFeasibleNoise from
// the solver counts the trial as outage; other errors abort.
class CfModel final : public OutageModel {
 public:
  explicit CfModel(CfScenario dims);
  std::uint64_t count_outages(SnrPoint s, RateSpec rate, std::uint64_t seed,
                              std::uint64_t t0, std::uint64_t t1,
                              KernelPolicy kp) const override;

 private:
  CfScenario dims_;
};

// 95% Wilson score interval.
std::pair<double, double> wilson95(std::uint64_t events, std::uint64_t trials);

// Runs `trials` independent realizations split over `workers` threads
// (workers <= 0 means RELAY_DMT_WORKERS or the hardware concurrency).
OutageEstimate estimate_outage(const OutageModel& model, SnrPoint s,
                               RateSpec rate, std::uint64_t trials,
                               std::uint64_t seed, int workers = 0,
                               KernelPolicy kp = KernelPolicy::automatic);

// Weighted log-log fit of p_hat against linear SNR over the window.
// Points need outage_events >= 50 to enter; weights are inverse squared
// relative Wilson widths. reliable = at least three usable points.
ExponentFit fit_exponent(std::span<const OutageEstimate> points,
                         std::optional<FitWindow> window);

std::pair<std::vector<OutageEstimate>, ExponentFit> sweep_and_fit(
    const OutageModel& model, const std::vector<double>& snr_grid_db,
    RateSpec rate, std::uint64_t trials_per_point, std::uint64_t seed,
    std::optional<FitWindow> window, int workers = 0,
    KernelPolicy kp = KernelPolicy::automatic);

}  // namespace relaydmt
