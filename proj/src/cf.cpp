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

#include "relaydmt/cf.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace relaydmt {

int CfScenario::m1() const {
  return std::accumulate(relay_antennas.begin(), relay_antennas.end(), 0);
}

void CfScenario::validate() const {
  if (m0 < 1 || m2 < 1 || relay_antennas.empty()) {
    throw DimensionMismatch("CF scenario needs source, destination and >= 1 relay");
  }
  for (int mk : relay_antennas) {
    if (mk < 1) throw DimensionMismatch("relay antenna counts must be >= 1");
  }
  if (relays() > 20) {
    throw DimensionMismatch("subset constraints are 2^K; K is limited to 20");
  }
}

std::string cf_block_x() { return "x"; }
std::string cf_block_xk(int k) { return "x" + std::to_string(k + 1); }
std::string cf_block_y() { return "y"; }
std::string cf_block_yk(int k) { return "y" + std::to_string(k + 1); }
std::string cf_block_yhk(int k) { return "yh" + std::to_string(k + 1); }

CfRealization sample_cf(const CfScenario& sc, RngStream& rng) {
  sc.validate();
  const int k_count = sc.relays();
  CfRealization re;
  re.h_sd = sample_cn_matrix(sc.m2, sc.m0, rng);
  re.h.reserve(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    re.h.push_back(sample_cn_matrix(
        sc.relay_antennas[static_cast<std::size_t>(k)], sc.m0, rng));
  }
  re.g.reserve(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    re.g.push_back(sample_cn_matrix(
        sc.m2, sc.relay_antennas[static_cast<std::size_t>(k)], rng));
  }
  re.f.assign(static_cast<std::size_t>(k_count), {});
  for (int k = 0; k < k_count; ++k) {
    re.f[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(k_count));
    for (int l = 0; l < k_count; ++l) {
      if (l == k) continue;
      re.f[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
          sample_cn_matrix(sc.relay_antennas[static_cast<std::size_t>(k)],
                           sc.relay_antennas[static_cast<std::size_t>(l)], rng);
    }
  }
  return re;
}

namespace {

double det_hermitian(const ComplexMatrix& m) {
  const ComplexMatrix sym = 0.5 * (m + m.adjoint().eval());
  return sym.determinant().real();
}

// Stacked source-to-everything matrix [H_sd; H_1; ...; H_K].
ComplexMatrix stack_source_channels(const CfScenario& sc,
                                    const CfRealization& re) {
  const int rows = sc.m2 + sc.m1();
  ComplexMatrix s(rows, sc.m0);
  s.topRows(sc.m2) = re.h_sd;
  int at = sc.m2;
  for (int k = 0; k < sc.relays(); ++k) {
    const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
    s.middleRows(at, mk) = re.h[static_cast<std::size_t>(k)];
    at += mk;
  }
  return s;
}

std::vector<int> mask_members(std::uint32_t mask, int k_count) {
  std::vector<int> out;
  for (int k = 0; k < k_count; ++k) {
    if (mask & (1u << k)) out.push_back(k);
  }
  return out;
}

}  // namespace

JointGaussianCov assemble_cf_covariance(const CfScenario& sc,
                                        const CfRealization& re,
                                        const CompressionNoise& nz) {
  sc.validate();
  const int k_count = sc.relays();
  if (static_cast<int>(nz.nhat.size()) != k_count) {
    throw DimensionMismatch("one quantization noise level per relay");
  }
  const double p = sc.snr.snr_linear;
  const double s0 = std::sqrt(p / sc.m0);

  GaussianModelBuilder b;
  const int src_x = b.add_source(sc.m0, 1.0);
  std::vector<int> src_xk, src_nk, src_qk;
  for (int k = 0; k < k_count; ++k) {
    src_xk.push_back(
        b.add_source(sc.relay_antennas[static_cast<std::size_t>(k)], 1.0));
  }
  const int src_n = b.add_source(sc.m2, 1.0);
  for (int k = 0; k < k_count; ++k) {
    src_nk.push_back(
        b.add_source(sc.relay_antennas[static_cast<std::size_t>(k)], 1.0));
    src_qk.push_back(b.add_source(sc.relay_antennas[static_cast<std::size_t>(k)],
                                  nz.nhat[static_cast<std::size_t>(k)]));
  }

  const int blk_x = b.add_block(cf_block_x(), sc.m0);
  b.add_term(blk_x, src_x, ComplexMatrix::Identity(sc.m0, sc.m0));
  for (int k = 0; k < k_count; ++k) {
    const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
    const int blk = b.add_block(cf_block_xk(k), mk);
    b.add_term(blk, src_xk[static_cast<std::size_t>(k)],
               ComplexMatrix::Identity(mk, mk));
  }

  const int blk_y = b.add_block(cf_block_y(), sc.m2);
  b.add_term(blk_y, src_x, s0 * re.h_sd);
  for (int k = 0; k < k_count; ++k) {
    const double sk =
        std::sqrt(p / sc.relay_antennas[static_cast<std::size_t>(k)]);
    b.add_term(blk_y, src_xk[static_cast<std::size_t>(k)],
               sk * re.g[static_cast<std::size_t>(k)]);
  }
  b.add_term(blk_y, src_n, ComplexMatrix::Identity(sc.m2, sc.m2));

  std::vector<int> blk_yk;
  for (int k = 0; k < k_count; ++k) {
    const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
    const int blk = b.add_block(cf_block_yk(k), mk);
    blk_yk.push_back(blk);
    b.add_term(blk, src_x, s0 * re.h[static_cast<std::size_t>(k)]);
    for (int l = 0; l < k_count; ++l) {
      if (l == k) continue;
      const double sl =
          std::sqrt(p / sc.relay_antennas[static_cast<std::size_t>(l)]);
      b.add_term(blk, src_xk[static_cast<std::size_t>(l)],
                 sl * re.f[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);
    }
    b.add_term(blk, src_nk[static_cast<std::size_t>(k)],
               ComplexMatrix::Identity(mk, mk));
  }

  for (int k = 0; k < k_count; ++k) {
    const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
    const int blk = b.add_block(cf_block_yhk(k), mk);
    b.add_term(blk, src_x, s0 * re.h[static_cast<std::size_t>(k)]);
    for (int l = 0; l < k_count; ++l) {
      if (l == k) continue;
      const double sl =
          std::sqrt(p / sc.relay_antennas[static_cast<std::size_t>(l)]);
      b.add_term(blk, src_xk[static_cast<std::size_t>(l)],
                 sl * re.f[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);
    }
    b.add_term(blk, src_nk[static_cast<std::size_t>(k)],
               ComplexMatrix::Identity(mk, mk));
    b.add_term(blk, src_qk[static_cast<std::size_t>(k)],
               ComplexMatrix::Identity(mk, mk));
  }

  return b.build();
}

double closed_form_Ls(const CfScenario& sc, const CfRealization& re,
                      const CompressionNoise& nz) {
  const double p = sc.snr.snr_linear;
  const ComplexMatrix s = stack_source_channels(sc, re);
  ComplexMatrix a = (p / sc.m0) * (s * s.adjoint());
  a.topLeftCorner(sc.m2, sc.m2) += ComplexMatrix::Identity(sc.m2, sc.m2);
  int at = sc.m2;
  for (int k = 0; k < sc.relays(); ++k) {
    const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
    a.block(at, at, mk, mk) +=
        (nz.nhat[static_cast<std::size_t>(k)] + 1.0) *
        ComplexMatrix::Identity(mk, mk);
    at += mk;
  }
  return det_hermitian(a);
}

double closed_form_Ld(const CfScenario& sc, const CfRealization& re) {
  const double p = sc.snr.snr_linear;
  ComplexMatrix a = (p / sc.m0) * (re.h_sd * re.h_sd.adjoint());
  for (int k = 0; k < sc.relays(); ++k) {
    const double pk = p / sc.relay_antennas[static_cast<std::size_t>(k)];
    a += pk * (re.g[static_cast<std::size_t>(k)] *
               re.g[static_cast<std::size_t>(k)].adjoint());
  }
  a += ComplexMatrix::Identity(sc.m2, sc.m2);
  return det_hermitian(a);
}

double closed_form_Lsd(const CfScenario& sc, const CfRealization& re) {
  const double p = sc.snr.snr_linear;
  const ComplexMatrix a = (p / sc.m0) * (re.h_sd * re.h_sd.adjoint()) +
                          ComplexMatrix::Identity(sc.m2, sc.m2);
  return det_hermitian(a);
}

double closed_form_Lskd(const CfScenario& sc, const CfRealization& re, int k) {
  const double p = sc.snr.snr_linear;
  const double pk = p / sc.relay_antennas[static_cast<std::size_t>(k)];
  const ComplexMatrix a =
      (p / sc.m0) * (re.h_sd * re.h_sd.adjoint()) +
      pk * (re.g[static_cast<std::size_t>(k)] *
            re.g[static_cast<std::size_t>(k)].adjoint()) +
      ComplexMatrix::Identity(sc.m2, sc.m2);
  return det_hermitian(a);
}

double closed_form_Lsk(const CfScenario& sc, const CfRealization& re, int k,
                       const CompressionNoise& nz) {
  const double p = sc.snr.snr_linear;
  const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
  const ComplexMatrix a =
      (p / sc.m0) * (re.h[static_cast<std::size_t>(k)] *
                     re.h[static_cast<std::size_t>(k)].adjoint()) +
      (nz.nhat[static_cast<std::size_t>(k)] + 1.0) *
          ComplexMatrix::Identity(mk, mk);
  return det_hermitian(a);
}

double closed_form_Ls_exk(const CfScenario& sc, const CfRealization& re, int k,
                          const CompressionNoise& nz) {
  const double p = sc.snr.snr_linear;
  const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
  ComplexMatrix a =
      (p / sc.m0) * (re.h[static_cast<std::size_t>(k)] *
                     re.h[static_cast<std::size_t>(k)].adjoint());
  for (int l = 0; l < sc.relays(); ++l) {
    if (l == k) continue;
    const double pl = p / sc.relay_antennas[static_cast<std::size_t>(l)];
    const ComplexMatrix& fkl =
        re.f[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    a += pl * (fkl * fkl.adjoint());
  }
  a += (nz.nhat[static_cast<std::size_t>(k)] + 1.0) *
       ComplexMatrix::Identity(mk, mk);
  return det_hermitian(a);
}

double closed_form_Ls_hatk(const CfScenario& sc, const CfRealization& re,
                           int k, const CompressionNoise& nz) {
  const double p = sc.snr.snr_linear;
  const int mk = sc.relay_antennas[static_cast<std::size_t>(k)];
  const int dim = mk + sc.m2;
  ComplexMatrix stacked(dim, sc.m0);
  stacked.topRows(mk) = re.h[static_cast<std::size_t>(k)];
  stacked.bottomRows(sc.m2) = re.h_sd;
  ComplexMatrix a = (p / sc.m0) * (stacked * stacked.adjoint());
  a.topLeftCorner(mk, mk) += (nz.nhat[static_cast<std::size_t>(k)] + 1.0) *
                             ComplexMatrix::Identity(mk, mk);
  a.bottomRightCorner(sc.m2, sc.m2) += ComplexMatrix::Identity(sc.m2, sc.m2);
  return det_hermitian(a);
}

double constraint_gap(const CfScenario& sc, const CfRealization& re,
                      const CompressionNoise& nz, std::uint32_t mask) {
  const int k_count = sc.relays();
  if (mask == 0 || mask >= (1u << k_count)) {
    throw DimensionMismatch("subset mask must be a nonempty subset of [K]");
  }
  const JointGaussianCov j = assemble_cf_covariance(sc, re, nz);
  const auto members = mask_members(mask, k_count);

  std::vector<std::string> x_t, x_tc, yh_t, y_t, yh_tc, all_xk;
  for (int k = 0; k < k_count; ++k) {
    all_xk.push_back(cf_block_xk(k));
    if (mask & (1u << k)) {
      x_t.push_back(cf_block_xk(k));
      y_t.push_back(cf_block_yk(k));
      yh_t.push_back(cf_block_yhk(k));
    } else {
      x_tc.push_back(cf_block_xk(k));
      yh_tc.push_back(cf_block_yhk(k));
    }
  }
  const std::vector<std::string> y_only = {cf_block_y()};

  const double rhs = gaussian_cmi(j, x_t, y_only, x_tc);

  std::vector<std::string> cond = all_xk;
  cond.insert(cond.end(), yh_tc.begin(), yh_tc.end());
  cond.push_back(cf_block_y());
  const double wz_term = gaussian_cmi(j, yh_t, y_t, cond);

  double cross_term = 0.0;
  for (int t : members) {
    std::vector<std::string> others;
    for (int k = 0; k < k_count; ++k) {
      if (k != t) others.push_back(cf_block_xk(k));
    }
    if (others.empty()) continue;
    const std::vector<std::string> yh_only = {cf_block_yhk(t)};
    const std::vector<std::string> x_only = {cf_block_xk(t)};
    cross_term += gaussian_cmi(j, yh_only, others, x_only);
  }

  return rhs - wz_term - cross_term;
}

namespace {

constexpr double kGapTolerance = 1e-9;
constexpr int kFixedPointIters = 200;
constexpr int kInflationCap = 500;

double singleton_ratio(const CfScenario& sc, const CfRealization& re,
                       const CompressionNoise& nz, int k) {
  const double num = closed_form_Ls_exk(sc, re, k, nz) *
                     closed_form_Ls_hatk(sc, re, k, nz);
  const double den =
      closed_form_Lskd(sc, re, k) * closed_form_Lsk(sc, re, k, nz);
  return num / den;
}

}  // namespace

CompressionNoise solve_compression_noise(const CfScenario& sc,
                                         const CfRealization& re) {
  sc.validate();
  const int k_count = sc.relays();
  CompressionNoise nz;
  nz.nhat.assign(static_cast<std::size_t>(k_count), 1.0);

  for (int k = 0; k < k_count; ++k) {
    double& nhat = nz.nhat[static_cast<std::size_t>(k)];
    const double mk =
        static_cast<double>(sc.relay_antennas[static_cast<std::size_t>(k)]);
    for (int it = 0; it < kFixedPointIters; ++it) {
      const double target = std::pow(singleton_ratio(sc, re, nz, k), 1.0 / mk);
      if (!std::isfinite(target)) break;
      const double next = 0.5 * nhat + 0.5 * target;
      const bool done = std::abs(next - nhat) <= 1e-9 * std::max(1.0, nhat);
      nhat = next;
      if (done) break;
    }
  }

  for (int round = 0; round <= kInflationCap; ++round) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (1u << k_count); ++mask) {
      min_gap = std::min(min_gap, constraint_gap(sc, re, nz, mask));
    }
    if (min_gap >= -kGapTolerance) return nz;
    for (double& v : nz.nhat) v *= 1.1;
  }
  throw NoFeasibleNoise("inflation cap reached without satisfying all subsets");
}

CfRateResult cf_rate(const CfScenario& sc, const CfRealization& re) {
  CfRateResult result;
  try {
    result.nhat = solve_compression_noise(sc, re);
  } catch (const NoFeasibleNoise&) {
    result.rate_bits = 0.0;
    result.constraints_ok = false;
    return result;
  }
  result.constraints_ok = true;

  double min_gap = std::numeric_limits<double>::infinity();
  std::uint32_t binding = 1;
  for (std::uint32_t mask = 1; mask < (1u << sc.relays()); ++mask) {
    const double gap = constraint_gap(sc, re, result.nhat, mask);
    if (gap < min_gap) {
      min_gap = gap;
      binding = mask;
    }
  }
  result.binding_subset = binding;

  double log_penalty = 0.0;
  for (int k = 0; k < sc.relays(); ++k) {
    log_penalty += sc.relay_antennas[static_cast<std::size_t>(k)] *
                   std::log(result.nhat.nhat[static_cast<std::size_t>(k)] + 1.0);
  }
  result.rate_bits =
      (std::log(closed_form_Ls(sc, re, result.nhat)) - log_penalty) /
      std::numbers::ln2;
  return result;
}

bool cf_outage_indicator(const CfScenario& sc, const CfRealization& re,
                         RateSpec rate) {
  const CfRateResult r = cf_rate(sc, re);
  if (!r.constraints_ok) return true;
  return r.rate_bits <= rate.threshold_bits(sc.snr);
}

UniversalNoiseReport universal_noise_check(const CfScenario& dims,
                                           const std::vector<double>& snr_db_grid,
                                           int draws, std::uint64_t seed) {
  if (snr_db_grid.empty() || draws < 1) {
    throw DimensionMismatch("universal_noise_check needs a grid and draws");
  }
  UniversalNoiseReport report;
  const double m1 = dims.m1();
  for (double db : snr_db_grid) {
    CfScenario sc = dims;
    sc.snr = SnrPoint::from_db(db);
    UniversalNoiseReport::PerSnr row;
    row.snr_db = db;
    row.draws = draws;
    long sum_l = 0;
    long count_l = 0;
    for (int d = 0; d < draws; ++d) {
      RngStream rng(seed, static_cast<std::uint64_t>(d));
      const CfRealization re = sample_cf(sc, rng);
      try {
        const CompressionNoise nz = solve_compression_noise(sc, re);
        const double base =
            std::pow(closed_form_Ls(sc, re, nz) / closed_form_Ld(sc, re),
                     1.0 / m1) +
            1.0;
        for (int k = 0; k < sc.relays(); ++k) {
          const long l = static_cast<long>(
              std::ceil(nz.nhat[static_cast<std::size_t>(k)] / base));
          row.max_l = std::max(row.max_l, l);
          sum_l += l;
          ++count_l;
        }
      } catch (const NoFeasibleNoise&) {
        ++row.flagged;
      } catch (const SingularMatrix&) {
        ++row.flagged;
      }
    }
    row.mean_l = count_l > 0 ? static_cast<double>(sum_l) /
                                   static_cast<double>(count_l)
                             : 0.0;
    report.per_snr.push_back(row);
  }

  // Log-log trend of the per-SNR maximum multiplier.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : report.per_snr) {
    const double x = row.snr_db / 10.0;  // log10 of linear SNR
    const double y = std::log10(static_cast<double>(std::max(row.max_l, 1L)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  report.loglog_slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  report.stable = std::abs(report.loglog_slope) < 0.1;
  return report;
}

}  // namespace relaydmt
