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

#include "relaydmt/channel.hpp"
#include "relaydmt/gaussian.hpp"
#include "relaydmt/jeemas.hpp"

namespace relaydmt {

// Two-hop relay channel with K non-cooperating relays, a direct link, and
// Wyner-Ziv compression at each relay. Power scaling P/M_0 and P/m_k sits
// in the channel coefficients; inputs are unit-covariance Gaussians with
// P = snr_linear.
struct CfScenario {
  int m0 = 1;
  std::vector<int> relay_antennas;
  int m2 = 1;
  SnrPoint snr;

  int relays() const { return static_cast<int>(relay_antennas.size()); }
  int m1() const;
  void validate() const;
};

struct CfRealization {
  ComplexMatrix h_sd;                         // M2 x M0
  std::vector<ComplexMatrix> h;               // source -> relay k, m_k x M0
  std::vector<ComplexMatrix> g;               // relay k -> dest, M2 x m_k
  std::vector<std::vector<ComplexMatrix>> f;  // relay l -> relay k: f[k][l], m_k x m_l
};

// Per-relay quantization noise variances (white within each relay).
struct CompressionNoise {
  std::vector<double> nhat;
};

struct CfRateResult {
  double rate_bits = 0.0;
  CompressionNoise nhat;
  bool constraints_ok = false;
  std::optional<std::uint32_t> binding_subset;  // bitmask over relays
};

// Sampling order: H_sd, then H_1..H_K, then G_1..G_K, then F_kl in k-major
// l-minor order (l != k); every matrix filled column-major.
CfRealization sample_cf(const CfScenario& sc, RngStream& rng);

// Joint covariance over blocks (x, x_1..x_K, y, y_1..y_K, yh_1..yh_K)
// with unit receiver noise and yh_k = y_k + quantization noise.
JointGaussianCov assemble_cf_covariance(const CfScenario& sc,
                                        const CfRealization& re,
                                        const CompressionNoise& nz);

// Block-name helpers for the assembled covariance.
std::string cf_block_x();
std::string cf_block_xk(int k);
std::string cf_block_y();
std::string cf_block_yk(int k);
std::string cf_block_yhk(int k);

// Determinant quantities (values, not logarithms).
double closed_form_Ls(const CfScenario& sc, const CfRealization& re,
                      const CompressionNoise& nz);
double closed_form_Ld(const CfScenario& sc, const CfRealization& re);
double closed_form_Lsd(const CfScenario& sc, const CfRealization& re);
double closed_form_Lskd(const CfScenario& sc, const CfRealization& re, int k);
double closed_form_Lsk(const CfScenario& sc, const CfRealization& re, int k,
                       const CompressionNoise& nz);
double closed_form_Ls_exk(const CfScenario& sc, const CfRealization& re, int k,
                          const CompressionNoise& nz);
double closed_form_Ls_hatk(const CfScenario& sc, const CfRealization& re,
                           int k, const CompressionNoise& nz);

// Wyner-Ziv feasibility gap of relay subset `mask` (nonzero bitmask):
//   I(x_T; y | x_TC) - I(yh_T; y_T | x_[K], yh_TC, y)
//                    - sum_{t in T} I(yh_t; x_[K]/t | x_t), in bits.
// Nonnegative gaps for every subset mean the compression rates fit.
double constraint_gap(const CfScenario& sc, const CfRealization& re,
                      const CompressionNoise& nz, std::uint32_t mask);

// Feasible quantization noise: per-relay damped fixed point of the
// singleton bound (damping 0.5, <= 200 iterations, 1e-9 relative
// convergence), then a global 1.1x inflation until every one of the
// 2^K - 1 subset gaps clears -1e-9 (<= 500 inflations). Throws
// NoFeasibleNoise at the cap.
CompressionNoise solve_compression_noise(const CfScenario& sc,
                                         const CfRealization& re);

// Achievable rate log2(L_s / prod (Nhat_k + 1)^{m_k}) at the solved
// noise. NoFeasibleNoise maps to rate 0 with constraints_ok = false.
CfRateResult cf_rate(const CfScenario& sc, const CfRealization& re);

bool cf_outage_indicator(const CfScenario& sc, const CfRealization& re,
                         RateSpec rate);

// Sweeps realizations over an SNR grid and reports the smallest integer
// multipliers l_k with Nhat_k <= l_k ((L_s/L_d)^(1/M_1) + 1), plus the
// log-log trend of their per-SNR maximum.
struct UniversalNoiseReport {
  struct PerSnr {
    double snr_db = 0.0;
    long max_l = 0;
    double mean_l = 0.0;
    int flagged = 0;  // degenerate draws (solver failures), not failures
    int draws = 0;
  };
  std::vector<PerSnr> per_snr;
  double loglog_slope = 0.0;
  bool stable = false;  // |loglog_slope| < 0.1
};

UniversalNoiseReport universal_noise_check(const CfScenario& dims,
                                           const std::vector<double>& snr_db_grid,
                                           int draws, std::uint64_t seed);

}  // namespace relaydmt
