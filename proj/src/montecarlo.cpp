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

#include "relaydmt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "relaydmt/kernels/dispatch.hpp"

namespace relaydmt {

namespace {

constexpr std::uint64_t kChunk = 16384;   // trials per work item
constexpr std::size_t kBatch = 2048;      // trials per SIMD batch
constexpr std::size_t kMaxFastCandidates = 64;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("RELAY_DMT_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// |h|^2 threshold equivalent to mi <= tau for a rank-one channel:
// log2(1 + snr*g) <= tau  <=>  g <= (2^tau - 1)/snr.
double gain_threshold(double snr_linear, double tau_bits) {
  return (std::exp2(tau_bits) - 1.0) / snr_linear;
}

// Scatters one trial's complex entries into entry-major SoA arrays.
void scatter_entries(const std::complex<double>* src, std::size_t entries,
                     std::size_t batch, std::size_t j, double* re,
                     double* im) {
  for (std::size_t e = 0; e < entries; ++e) {
    re[e * batch + j] = src[e].real();
    im[e * batch + j] = src[e].imag();
  }
}

}  // namespace

std::pair<double, double> wilson95(std::uint64_t events, std::uint64_t trials) {
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(events) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (p + 0.5 * z2n) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// ---------------------------------------------------------------------------
// Point-to-point

P2pModel::P2pModel(int nt, int nr, bool selection)
    : nt_(nt), nr_(nr), selection_(selection) {
  if (nt < 1 || nr < 1) throw DimensionMismatch("antenna counts >= 1");
  if (selection_ && nt_ < nr_) {
    throw RequiresMtGeMr("transmit selection needs Nt >= Nr");
  }
}

namespace {

std::uint64_t p2p_generic(int nt, int nr, bool selection, SnrPoint s,
                          double tau, std::uint64_t seed, std::uint64_t t0,
                          std::uint64_t t1) {
  std::vector<std::vector<int>> col_subsets;
  if (selection) {
    std::vector<int> comb(static_cast<std::size_t>(nr));
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      col_subsets.push_back(comb);
      int i = nr - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == nt - nr + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < nr; ++j) {
        comb[static_cast<std::size_t>(j)] =
            comb[static_cast<std::size_t>(j) - 1] + 1;
      }
    }
  }
  std::uint64_t events = 0;
  std::vector<int> all_rows(static_cast<std::size_t>(nr));
  std::iota(all_rows.begin(), all_rows.end(), 0);
  for (std::uint64_t t = t0; t < t1; ++t) {
    RngStream rng(seed, t);
    const ComplexMatrix h = sample_cn_matrix(nr, nt, rng);
    double mi;
    if (!selection) {
      mi = mutual_info_bits(s.snr_linear, h);
    } else {
      mi = -1.0;
      for (const auto& cols : col_subsets) {
        mi = std::max(mi, mutual_info_bits(s.snr_linear, submatrix(h, all_rows, cols)));
      }
    }
    if (mi <= tau) ++events;
  }
  return events;
}

std::uint64_t p2p_fast_sum(int nt, int nr, SnrPoint s, double tau,
                           std::uint64_t seed, std::uint64_t t0,
                           std::uint64_t t1) {
  const auto& k = kernels::table();
  const std::size_t entries = static_cast<std::size_t>(nt) * nr;
  const double bound = gain_threshold(s.snr_linear, tau);
  std::vector<double> re(entries * kBatch), im(entries * kBatch);
  std::vector<double> acc(kBatch), tmp(kBatch);
  std::vector<std::complex<double>> draw(entries);
  std::uint64_t events = 0;
  for (std::uint64_t base = t0; base < t1; base += kBatch) {
    const std::size_t bn = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, t1 - base));
    for (std::size_t j = 0; j < bn; ++j) {
      RngStream rng(seed, base + j);
      rng.fill_cn(draw.data(), entries);
      scatter_entries(draw.data(), entries, kBatch, j, re.data(), im.data());
    }
    k.complex_abs2(re.data(), im.data(), bn, acc.data());
    for (std::size_t e = 1; e < entries; ++e) {
      k.complex_abs2(re.data() + e * kBatch, im.data() + e * kBatch, bn,
                     tmp.data());
      k.add_inplace(acc.data(), tmp.data(), bn);
    }
    events += k.count_le(acc.data(), bn, bound);
  }
  return events;
}

std::uint64_t p2p_fast_2x2(SnrPoint s, double tau, std::uint64_t seed,
                           std::uint64_t t0, std::uint64_t t1) {
  const auto& k = kernels::table();
  const double det_bound = std::exp2(tau);
  std::vector<double> re(4 * kBatch), im(4 * kBatch), dets(kBatch);
  std::vector<std::complex<double>> draw(4);
  std::uint64_t events = 0;
  for (std::uint64_t base = t0; base < t1; base += kBatch) {
    const std::size_t bn = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, t1 - base));
    for (std::size_t j = 0; j < bn; ++j) {
      RngStream rng(seed, base + j);
      rng.fill_cn(draw.data(), 4);
      scatter_entries(draw.data(), 4, kBatch, j, re.data(), im.data());
    }
    // Column-major draw order: entry 0 = (0,0)=a, 1 = (1,0)=c,
    // 2 = (0,1)=b, 3 = (1,1)=d.
    k.mi_det_2x2(s.snr_linear, re.data() + 0 * kBatch, im.data() + 0 * kBatch,
                 re.data() + 2 * kBatch, im.data() + 2 * kBatch,
                 re.data() + 1 * kBatch, im.data() + 1 * kBatch,
                 re.data() + 3 * kBatch, im.data() + 3 * kBatch, bn,
                 dets.data());
    events += k.count_le(dets.data(), bn, det_bound);
  }
  return events;
}

}  // namespace

std::uint64_t P2pModel::count_outages(SnrPoint s, RateSpec rate,
                                      std::uint64_t seed, std::uint64_t t0,
                                      std::uint64_t t1,
                                      KernelPolicy kp) const {
  const double tau = rate.threshold_bits(s);
  if (kp == KernelPolicy::automatic && !selection_ && s.snr_linear > 0.0) {
    if (nt_ == 1 || nr_ == 1) {
      return p2p_fast_sum(nt_, nr_, s, tau, seed, t0, t1);
    }
    if (nt_ == 2 && nr_ == 2) {
      return p2p_fast_2x2(s, tau, seed, t0, t1);
    }
  }
  return p2p_generic(nt_, nr_, selection_, s, tau, seed, t0, t1);
}

// ---------------------------------------------------------------------------
// Multi-hop selection

MultihopModel::MultihopModel(RelayTopology t, SelectionPolicy pol,
                             bool fixed_path)
    : topology_(std::move(t)), policy_(pol), fixed_path_(fixed_path) {
  topology_.validate();
}

namespace {

SubsetChain first_path(const RelayTopology& t, int m) {
  SubsetChain p;
  for (int n = 0; n < t.stages(); ++n) {
    std::vector<int> antennas(static_cast<std::size_t>(m));
    std::iota(antennas.begin(), antennas.end(), 0);
    p.subsets.push_back({n, std::move(antennas)});
  }
  return p;
}

std::uint64_t multihop_generic(const RelayTopology& t,
                               const SelectionPolicy& pol, bool fixed_path,
                               SnrPoint s, RateSpec rate, std::uint64_t seed,
                               std::uint64_t t0, std::uint64_t t1) {
  const double tau = rate.threshold_bits(s);
  std::uint64_t events = 0;
  const int m = pol.resolve_m(t, rate.policy_r());
  const SubsetChain pinned = first_path(t, m);
  for (std::uint64_t trial = t0; trial < t1; ++trial) {
    RngStream rng(seed, trial);
    const ChannelSet c = sample_channels(t, rng);
    double mi;
    if (fixed_path) {
      mi = path_mutual_info(c, pinned, s);
    } else {
      mi = select_path(c, t, s, pol, rate.policy_r()).mi_bits;
    }
    if (mi <= tau) ++events;
  }
  return events;
}

// Batched evaluation for single-antenna chains: every candidate is a list
// of per-hop coefficients; the best |product|^2 is compared to the gain
// threshold.
std::uint64_t multihop_fast_m1(const RelayTopology& t,
                               const std::vector<SubsetChain>& candidates,
                               SnrPoint s, double tau, std::uint64_t seed,
                               std::uint64_t t0, std::uint64_t t1) {
  const auto& k = kernels::table();
  const int hops = t.hops();
  std::vector<std::size_t> hop_offset(static_cast<std::size_t>(hops));
  std::size_t entries = 0;
  for (int n = 0; n < hops; ++n) {
    hop_offset[static_cast<std::size_t>(n)] = entries;
    entries += static_cast<std::size_t>(
                   t.stage_antennas[static_cast<std::size_t>(n)]) *
               static_cast<std::size_t>(
                   t.stage_antennas[static_cast<std::size_t>(n) + 1]);
  }
  // Flat coefficient index per candidate and hop (column-major hop matrix).
  std::vector<std::vector<std::size_t>> coeff(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (int n = 0; n < hops; ++n) {
      const int rows = t.stage_antennas[static_cast<std::size_t>(n) + 1];
      const int col = candidates[c].subsets[static_cast<std::size_t>(n)].antennas[0];
      const int row =
          candidates[c].subsets[static_cast<std::size_t>(n) + 1].antennas[0];
      coeff[c].push_back(hop_offset[static_cast<std::size_t>(n)] +
                         static_cast<std::size_t>(col) *
                             static_cast<std::size_t>(rows) +
                         static_cast<std::size_t>(row));
    }
  }

  const double bound = gain_threshold(s.snr_linear, tau);
  std::vector<double> re(entries * kBatch), im(entries * kBatch);
  std::vector<double> acc_r(kBatch), acc_i(kBatch), gain(kBatch), best(kBatch);
  std::vector<std::complex<double>> draw(entries);
  std::uint64_t events = 0;

  for (std::uint64_t base = t0; base < t1; base += kBatch) {
    const std::size_t bn = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, t1 - base));
    for (std::size_t j = 0; j < bn; ++j) {
      RngStream rng(seed, base + j);
      rng.fill_cn(draw.data(), entries);
      scatter_entries(draw.data(), entries, kBatch, j, re.data(), im.data());
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const std::size_t e0 = coeff[c][0];
      std::copy_n(re.data() + e0 * kBatch, bn, acc_r.data());
      std::copy_n(im.data() + e0 * kBatch, bn, acc_i.data());
      for (int n = 1; n < hops; ++n) {
        const std::size_t e = coeff[c][static_cast<std::size_t>(n)];
        k.complex_mul_inplace(acc_r.data(), acc_i.data(),
                              re.data() + e * kBatch, im.data() + e * kBatch,
                              bn);
      }
      k.complex_abs2(acc_r.data(), acc_i.data(), bn, gain.data());
      if (c == 0) {
        std::copy_n(gain.data(), bn, best.data());
      } else {
        k.max_inplace(best.data(), gain.data(), bn);
      }
    }
    events += k.count_le(best.data(), bn, bound);
  }
  return events;
}

}  // namespace

std::uint64_t MultihopModel::count_outages(SnrPoint s, RateSpec rate,
                                           std::uint64_t seed,
                                           std::uint64_t t0, std::uint64_t t1,
                                           KernelPolicy kp) const {
  const int m = policy_.resolve_m(topology_, rate.policy_r());
  if (kp == KernelPolicy::automatic && m == 1 && s.snr_linear > 0.0) {
    std::vector<SubsetChain> candidates;
    if (fixed_path_) {
      candidates.push_back(first_path(topology_, 1));
    } else {
      candidates = candidate_chains(topology_, 1, policy_);
    }
    if (candidates.size() <= kMaxFastCandidates) {
      return multihop_fast_m1(topology_, candidates, s,
                              rate.threshold_bits(s), seed, t0, t1);
    }
  }
  return multihop_generic(topology_, policy_, fixed_path_, s, rate, seed, t0,
                          t1);
}

// ---------------------------------------------------------------------------
// Compress-and-forward

CfModel::CfModel(CfScenario dims) : dims_(std::move(dims)) {
  dims_.validate();
}

namespace {

// All-scalar K=1 trial, closed forms throughout. Mirrors the generic
// solver (same damping, caps and tolerances) on the same stream layout.
bool cf_trial_scalar_k1(double p, double tau, std::uint64_t seed,
                        std::uint64_t trial) {
  RngStream rng(seed, trial);
  const std::complex<double> h_sd = rng.cn();
  const std::complex<double> h1 = rng.cn();
  const std::complex<double> g1 = rng.cn();
  const double a = std::norm(h_sd);
  const double b = std::norm(h1);
  const double c = std::norm(g1);

  const double l_skd = p * a + p * c + 1.0;
  const double direct = 1.0 + p * a;

  double nhat = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double target = ((nhat + 1.0) * direct + p * b) / l_skd;
    const double next = 0.5 * nhat + 0.5 * target;
    const bool done = std::abs(next - nhat) <= 1e-9 * std::max(1.0, nhat);
    nhat = next;
    if (done) break;
  }

  bool feasible = false;
  for (int round = 0; round <= 500; ++round) {
    const double ls_hat = (nhat + 1.0) * direct + p * b;
    if (std::log2(nhat * l_skd / ls_hat) >= -1e-9) {
      feasible = true;
      break;
    }
    nhat *= 1.1;
  }
  if (!feasible) return true;  // counted as outage

  const double rate = std::log2(1.0 + p * a + p * b / (nhat + 1.0));
  return rate <= tau;
}

}  // namespace

std::uint64_t CfModel::count_outages(SnrPoint s, RateSpec rate,
                                     std::uint64_t seed, std::uint64_t t0,
                                     std::uint64_t t1, KernelPolicy kp) const {
  CfScenario sc = dims_;
  sc.snr = s;
  const double tau = rate.threshold_bits(s);
  const bool scalar_k1 = sc.relays() == 1 && sc.m0 == 1 && sc.m2 == 1 &&
                         sc.relay_antennas[0] == 1;
  if (kp == KernelPolicy::automatic && scalar_k1) {
    std::uint64_t events = 0;
    for (std::uint64_t t = t0; t < t1; ++t) {
      if (cf_trial_scalar_k1(s.snr_linear, tau, seed, t)) ++events;
    }
    return events;
  }
  std::uint64_t events = 0;
  for (std::uint64_t t = t0; t < t1; ++t) {
    RngStream rng(seed, t);
    const CfRealization re = sample_cf(sc, rng);
    if (cf_outage_indicator(sc, re, rate)) ++events;
  }
  return events;
}

// ---------------------------------------------------------------------------
// Engine

OutageEstimate estimate_outage(const OutageModel& model, SnrPoint s,
                               RateSpec rate, std::uint64_t trials,
                               std::uint64_t seed, int workers,
                               KernelPolicy kp) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const int nworkers = resolve_workers(workers);
  std::uint64_t events = 0;
  if (nworkers == 1 || trials <= kChunk) {
    events = model.count_outages(s, rate, seed, 0, trials, kp);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> total{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      std::uint64_t local = 0;
      try {
        for (;;) {
          const std::uint64_t t0 = next.fetch_add(kChunk);
          if (t0 >= trials) break;
          const std::uint64_t t1 = std::min(trials, t0 + kChunk);
          local += model.count_outages(s, rate, seed, t0, t1, kp);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
      total += local;
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    events = total.load();
  }

  OutageEstimate est;
  est.snr = s;
  est.trials = trials;
  est.outage_events = events;
  est.p_hat = static_cast<double>(events) / static_cast<double>(trials);
  const auto [lo, hi] = wilson95(events, trials);
  est.ci_low = lo;
  est.ci_high = hi;
  return est;
}

ExponentFit fit_exponent(std::span<const OutageEstimate> points,
                         std::optional<FitWindow> window) {
  ExponentFit fit;
  std::vector<const OutageEstimate*> used;
  for (const auto& p : points) {
    if (p.outage_events < 50) continue;
    if (window && (p.snr.snr_db < window->start_db - 1e-9 ||
                   p.snr.snr_db > window->stop_db + 1e-9)) {
      continue;
    }
    used.push_back(&p);
  }
  fit.points_used = static_cast<int>(used.size());
  fit.reliable = fit.points_used >= 3;
  if (used.size() < 2) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.stderr_ = std::numeric_limits<double>::quiet_NaN();
    fit.r_squared = std::numeric_limits<double>::quiet_NaN();
    fit.reliable = false;
    return fit;
  }

  // Weighted least squares of log10 p on log10 SNR; weights are inverse
  // squared relative interval widths.
  double sw = 0, swx = 0, swy = 0;
  std::vector<double> xs(used.size()), ys(used.size()), ws(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    const auto& p = *used[i];
    xs[i] = std::log10(p.snr.snr_linear);
    ys[i] = std::log10(p.p_hat);
    const double rel = (p.ci_high - p.ci_low) / p.p_hat;
    ws[i] = 1.0 / (rel * rel);
    sw += ws[i];
    swx += ws[i] * xs[i];
    swy += ws[i] * ys[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    sxx += ws[i] * (xs[i] - xbar) * (xs[i] - xbar);
    sxy += ws[i] * (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx <= 0.0) {
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.stderr_ = std::numeric_limits<double>::quiet_NaN();
    fit.r_squared = std::numeric_limits<double>::quiet_NaN();
    fit.reliable = false;
    return fit;
  }
  fit.slope = sxy / sxx;
  const double intercept = ybar - fit.slope * xbar;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double r = ys[i] - (intercept + fit.slope * xs[i]);
    ss_res += ws[i] * r * r;
    ss_tot += ws[i] * (ys[i] - ybar) * (ys[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.stderr_ = used.size() > 2
                    ? std::sqrt(ss_res / (static_cast<double>(used.size()) - 2.0) / sxx)
                    : 0.0;
  return fit;
}

std::pair<std::vector<OutageEstimate>, ExponentFit> sweep_and_fit(
    const OutageModel& model, const std::vector<double>& snr_grid_db,
    RateSpec rate, std::uint64_t trials_per_point, std::uint64_t seed,
    std::optional<FitWindow> window, int workers, KernelPolicy kp) {
  if (snr_grid_db.empty()) throw ConfigError("empty SNR grid");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (snr_grid_db[i] <= snr_grid_db[i - 1]) {
      throw ConfigError("SNR grid must be ascending");
    }
  }
  if (window && (window->start_db < snr_grid_db.front() - 1e-9 ||
                 window->stop_db > snr_grid_db.back() + 1e-9 ||
                 window->start_db > window->stop_db)) {
    throw ConfigError("fit window must lie within the SNR grid");
  }
  std::vector<OutageEstimate> estimates;
  estimates.reserve(snr_grid_db.size());
  for (double db : snr_grid_db) {
    estimates.push_back(estimate_outage(model, SnrPoint::from_db(db), rate,
                                        trials_per_point, seed, workers, kp));
  }
  return {estimates, fit_exponent(estimates, window)};
}

}  // namespace relaydmt
