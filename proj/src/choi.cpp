// Copyright 2026 The qcoh authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcoh/choi.hpp"

#include <array>

namespace qcoh {

namespace {

using cd = std::complex<double>;

const std::array<Mat2c, 4>& paulis() {
  static const std::array<Mat2c, 4> p = [] {
    std::array<Mat2c, 4> out;
    out[0] << 1, 0, 0, 1;
    out[1] << 0, 1, 1, 0;
    out[2] << 0, cd(0, -1), cd(0, 1), 0;
    out[3] << 1, 0, 0, -1;
    return out;
  }();
  return p;
}

Mat4c kron2(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Mat4c choi_from_ptm(const PauliTransferMatrix& e) {
  // J = (1/4) sum_jk R_jk sigma_j (x) sigma_k^T
  Mat4c j = Mat4c::Zero();
  const auto& p = paulis();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (e.m(a, b) != 0.0) j += 0.25 * e.m(a, b) * kron2(p[a], p[b].transpose());
  return j;
}

PauliTransferMatrix ptm_from_choi(const Mat4c& choi) {
  Mat4 m;
  const auto& p = paulis();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      m(a, b) = (choi * kron2(p[a], p[b].transpose())).trace().real();
  return PauliTransferMatrix(m);
}

Vec4 choi_eigenvalues(const PauliTransferMatrix& e) {
  const Mat4c j = choi_from_ptm(e);
  Eigen::SelfAdjointEigenSolver<Mat4c> es(0.5 * (j + j.adjoint()));
  return es.eigenvalues();
}

bool is_cptp(const PauliTransferMatrix& e, double tol) {
  if (!e.is_trace_preserving(tol)) return false;
  return choi_eigenvalues(e).minCoeff() >= -tol;
}

Mat2c apply_via_choi(const Mat4c& choi, const Mat2c& rho) {
  const Mat4c w = choi * kron2(Mat2c::Identity(), rho.transpose());
  Mat2c out;
  // partial trace over the input (second) factor
  out(0, 0) = w(0, 0) + w(1, 1);
  out(0, 1) = w(0, 2) + w(1, 3);
  out(1, 0) = w(2, 0) + w(3, 1);
  out(1, 1) = w(2, 2) + w(3, 3);
  return 2.0 * out;
}

PauliTransferMatrix random_cptp(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4c a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cd(gauss(rng), gauss(rng));
  const Mat4c j0 = a * a.adjoint();

  // Q = Tr_out J0 (trace over the first factor)
  Mat2c q;
  q(0, 0) = j0(0, 0) + j0(2, 2);
  q(0, 1) = j0(0, 1) + j0(2, 3);
  q(1, 0) = j0(1, 0) + j0(3, 2);
  q(1, 1) = j0(1, 1) + j0(3, 3);

  Eigen::SelfAdjointEigenSolver<Mat2c> es(q);
  const Mat2c qinvsqrt = es.operatorInverseSqrt();
  const Mat4c y = kron2(Mat2c::Identity(), qinvsqrt / std::sqrt(2.0));
  return ptm_from_choi(y * j0 * y.adjoint());
}

Mat2c random_pure_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector2cd psi(cd(gauss(rng), gauss(rng)), cd(gauss(rng), gauss(rng)));
  psi.normalize();
  return psi * psi.adjoint();
}

}  // namespace qcoh
