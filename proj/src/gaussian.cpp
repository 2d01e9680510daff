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

#include "relaydmt/gaussian.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <stdexcept>

namespace relaydmt {

namespace {

ComplexMatrix gather(const ComplexMatrix& cov,
                     const std::vector<Eigen::Index>& rows,
                     const std::vector<Eigen::Index>& cols) {
  ComplexMatrix out(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cov(rows[i], cols[j]);
    }
  }
  return out;
}

void require_disjoint(const JointGaussianCov& j,
                      std::span<const std::string> a,
                      std::span<const std::string> b, const char* what) {
  std::set<std::string> sa(a.begin(), a.end());
  for (const auto& name : b) {
    if (sa.count(name)) {
      throw std::invalid_argument(std::string("block sets must be disjoint: ") +
                                  what + " shares '" + name + "'");
    }
  }
  (void)j;
}

}  // namespace

JointGaussianCov::JointGaussianCov(std::vector<Block> blocks, ComplexMatrix cov)
    : blocks_(std::move(blocks)) {
  Eigen::Index expect = 0;
  for (const auto& b : blocks_) {
    if (b.offset != expect || b.len < 1) {
      throw DimensionMismatch("blocks must partition the covariance");
    }
    expect += b.len;
  }
  if (cov.rows() != expect || cov.cols() != expect) {
    throw DimensionMismatch("covariance dimension does not match blocks");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DimensionMismatch("covariance must be Hermitian");
  }
  cov_ = 0.5 * (cov + cov.adjoint().eval());
}

std::vector<Eigen::Index> JointGaussianCov::indices(
    std::span<const std::string> names) const {
  std::vector<Eigen::Index> out;
  for (const auto& b : blocks_) {
    if (std::find(names.begin(), names.end(), b.name) != names.end()) {
      for (Eigen::Index i = 0; i < b.len; ++i) out.push_back(b.offset + i);
    }
  }
  std::size_t matched = 0;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& b : blocks_) found = found || b.name == name;
    if (!found) {
      throw std::invalid_argument("unknown block '" + name + "'");
    }
    ++matched;
  }
  (void)matched;
  return out;
}

double conditional_entropy(const JointGaussianCov& j,
                           std::span<const std::string> target,
                           std::span<const std::string> given) {
  require_disjoint(j, target, given, "target/given");
  const auto ti = j.indices(target);
  if (ti.empty()) {
    throw std::invalid_argument("conditional_entropy: empty target");
  }
  const ComplexMatrix stt = gather(j.cov(), ti, ti);
  if (given.empty()) {
    return detail::logdet_psd_gated(stt);
  }
  const auto gi = j.indices(given);
  const ComplexMatrix sgg = gather(j.cov(), gi, gi);
  const ComplexMatrix stg = gather(j.cov(), ti, gi);
  Eigen::LDLT<ComplexMatrix> ldlt(sgg);
  if (ldlt.info() != Eigen::Success) {
    throw SingularMatrix("conditioning covariance factorization failed");
  }
  const Eigen::VectorXd d = ldlt.vectorD().real();
  if (!(d.minCoeff() > kPsdRelativeFloor * std::max(d.maxCoeff(), 0.0))) {
    throw SingularMatrix("conditioning covariance is singular");
  }
  const ComplexMatrix schur = stt - stg * ldlt.solve(stg.adjoint());
  return detail::logdet_psd_gated(schur);
}

double gaussian_cmi(const JointGaussianCov& j, std::span<const std::string> a,
                    std::span<const std::string> b,
                    std::span<const std::string> c) {
  require_disjoint(j, a, b, "A/B");
  require_disjoint(j, a, c, "A/C");
  require_disjoint(j, b, c, "B/C");
  std::vector<std::string> ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  const double ha = conditional_entropy(j, a, c);
  const double hb = conditional_entropy(j, b, c);
  const double hab = conditional_entropy(j, ab, c);
  const double bits = (ha + hb - hab) / std::numbers::ln2;
  return bits > 0.0 ? bits : 0.0;
}

int GaussianModelBuilder::add_source(Eigen::Index dim, double variance) {
  if (dim < 1 || variance < 0.0) {
    throw std::invalid_argument("bad source spec");
  }
  sources_.push_back({source_dim_, dim, variance});
  source_dim_ += dim;
  return static_cast<int>(sources_.size()) - 1;
}

int GaussianModelBuilder::add_block(const std::string& name,
                                    Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("bad block dim");
  blocks_.push_back({name, block_dim_, dim, {}});
  block_dim_ += dim;
  return static_cast<int>(blocks_.size()) - 1;
}

void GaussianModelBuilder::add_term(int block, int source,
                                    const ComplexMatrix& coeff) {
  auto& b = blocks_.at(static_cast<std::size_t>(block));
  const auto& s = sources_.at(static_cast<std::size_t>(source));
  if (coeff.rows() != b.dim || coeff.cols() != s.dim) {
    throw DimensionMismatch("coefficient shape does not match block/source");
  }
  b.terms.emplace_back(source, coeff);
}

JointGaussianCov GaussianModelBuilder::build() const {
  ComplexMatrix t = ComplexMatrix::Zero(block_dim_, source_dim_);
  for (const auto& b : blocks_) {
    for (const auto& [src, coeff] : b.terms) {
      const auto& s = sources_.at(static_cast<std::size_t>(src));
      t.block(b.offset, s.offset, b.dim, s.dim) += coeff;
    }
  }
  Eigen::VectorXcd variances(source_dim_);
  for (const auto& s : sources_) {
    variances.segment(s.offset, s.dim).setConstant(s.variance);
  }
  const ComplexMatrix cov = t * variances.asDiagonal() * t.adjoint();
  std::vector<JointGaussianCov::Block> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back({b.name, b.offset, b.dim});
  return JointGaussianCov(std::move(blocks), cov);
}

}  // namespace relaydmt
