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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "relaydmt/errors.hpp"
#include "relaydmt/rng.hpp"

namespace relaydmt {

using ComplexMatrix = Eigen::MatrixXcd;

// Relative pivot floor used by positive-definiteness gates throughout the
// project: a factorization pivot below 1e-12 of the largest pivot (or a
// non-positive pivot) is treated as singular.
inline constexpr double kPsdRelativeFloor = 1e-12;

// Validated Hermitian positive-semidefinite matrix. Construction checks
// conjugate symmetry to 1e-12 (relative to the largest entry) and that the
// spectrum is PSD up to numerical noise, then stores the symmetrized form.
class HermitianPsd {
 public:
  explicit HermitianPsd(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

// i.i.d. CN(0,1) entries, filled in column-major order from the stream.
ComplexMatrix sample_cn_matrix(Eigen::Index rows, Eigen::Index cols,
                               RngStream& rng);

// ln det(A) via an LDLT factorization; throws SingularMatrix when the
// pivot spread indicates A is not safely positive definite.
double logdet_hermitian(const HermitianPsd& a);

// log2 det(I + snr * M M^H) in bits. Always well defined for snr >= 0
// (the argument is at least the identity), so no singularity gate.
double mutual_info_bits(double snr, const ComplexMatrix& m);

namespace detail {
// Shared LDLT-based ln-det core for a self-adjoint matrix known (or
// required) to be positive definite.
double logdet_psd_gated(const ComplexMatrix& a);
}  // namespace detail

}  // namespace relaydmt
