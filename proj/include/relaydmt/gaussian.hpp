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

#include <span>
#include <string>
#include <vector>

#include "relaydmt/linalg.hpp"

namespace relaydmt {

// Joint circularly-symmetric Gaussian vector described by named blocks
// over one covariance matrix. Entropies use the ln-det convention: the
// (pi e)^d constant is dropped everywhere, so only entropy differences
// (conditional entropies, mutual informations) are meaningful, and there
// the constants cancel.
class JointGaussianCov {
 public:
  struct Block {
    std::string name;
    Eigen::Index offset;
    Eigen::Index len;
  };

  // Blocks must partition [0, cov.rows()) in declaration order.
  JointGaussianCov(std::vector<Block> blocks, ComplexMatrix cov);

  Eigen::Index dim() const { return cov_.rows(); }
  const ComplexMatrix& cov() const { return cov_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Concatenated indices of the named blocks, in declaration order.
  std::vector<Eigen::Index> indices(std::span<const std::string> names) const;

 private:
  std::vector<Block> blocks_;
  ComplexMatrix cov_;
};

// h(target | given) up to constants: ln det of the conditional covariance
// (Schur complement). Throws SingularMatrix when the conditioning block or
// the conditional covariance is degenerate.
double conditional_entropy(const JointGaussianCov& j,
                           std::span<const std::string> target,
                           std::span<const std::string> given);

// I(A; B | C) in bits, computed as h(A|C) + h(B|C) - h(A,B|C) and clamped
// to be nonnegative. A, B, C must be pairwise disjoint.
double gaussian_cmi(const JointGaussianCov& j, std::span<const std::string> a,
                    std::span<const std::string> b,
                    std::span<const std::string> c);

// Helper for assembling covariances of linear-Gaussian models
// z = T w with independent white sources w (per-source scalar variance).
// Observed blocks are declared as linear combinations of sources.
class GaussianModelBuilder {
 public:
  // Returns the source id. `variance` applies to every coordinate.
  int add_source(Eigen::Index dim, double variance);

  // Declares an observed block. Terms are (source, coefficient matrix)
  // pairs; coefficient rows must equal `dim`.
  int add_block(const std::string& name, Eigen::Index dim);
  void add_term(int block, int source, const ComplexMatrix& coeff);

  JointGaussianCov build() const;

 private:
  struct Source {
    Eigen::Index offset;
    Eigen::Index dim;
    double variance;
  };
  struct BlockSpec {
    std::string name;
    Eigen::Index offset;
    Eigen::Index dim;
    std::vector<std::pair<int, ComplexMatrix>> terms;
  };
  std::vector<Source> sources_;
  std::vector<BlockSpec> blocks_;
  Eigen::Index source_dim_ = 0;
  Eigen::Index block_dim_ = 0;
};

}  // namespace relaydmt
