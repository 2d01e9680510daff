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

#include "relaydmt/linalg.hpp"

#include <cmath>
#include <numbers>

namespace relaydmt {

HermitianPsd::HermitianPsd(ComplexMatrix m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatch("HermitianPsd requires a square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    throw DimensionMismatch("matrix is not Hermitian within tolerance");
  }
  m_ = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_,
                                                  Eigen::EigenvaluesOnly);
  const double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < -1e-10 * std::max(1.0, lmax)) {
    throw SingularMatrix("matrix is not positive semidefinite");
  }
}

ComplexMatrix sample_cn_matrix(Eigen::Index rows, Eigen::Index cols,
                               RngStream& rng) {
  if (rows < 1 || cols < 1) {
    throw DimensionMismatch("sample_cn_matrix requires positive dimensions");
  }
  ComplexMatrix m(rows, cols);
  rng.fill_cn(m.data(), static_cast<std::size_t>(rows * cols));
  return m;
}

namespace detail {

double logdet_psd_gated(const ComplexMatrix& a) {
  Eigen::LDLT<ComplexMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) {
    throw SingularMatrix("LDLT factorization failed");
  }
  const Eigen::VectorXd d = ldlt.vectorD().real();
  const double dmax = d.maxCoeff();
  const double dmin = d.minCoeff();
  if (!(dmin > kPsdRelativeFloor * std::max(dmax, 0.0))) {
    throw SingularMatrix("matrix is singular or indefinite");
  }
  return d.array().log().sum();
}

}  // namespace detail

double logdet_hermitian(const HermitianPsd& a) {
  return detail::logdet_psd_gated(a.matrix());
}

double mutual_info_bits(double snr, const ComplexMatrix& m) {
  if (!(snr >= 0.0)) {
    throw DimensionMismatch("mutual_info_bits requires snr >= 0");
  }
  if (snr == 0.0) return 0.0;
  // det(I_m + snr M M^H) = det(I_k + snr M^H M); use the smaller Gram side.
  ComplexMatrix gram;
  if (m.rows() <= m.cols()) {
    gram = ComplexMatrix::Identity(m.rows(), m.rows()) +
           snr * (m * m.adjoint());
  } else {
    gram = ComplexMatrix::Identity(m.cols(), m.cols()) +
           snr * (m.adjoint() * m);
  }
  Eigen::LDLT<ComplexMatrix> ldlt(gram);
  return ldlt.vectorD().real().array().log().sum() / std::numbers::ln2;
}

}  // namespace relaydmt
