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

#ifndef QCOH_CHOI_HPP
#define QCOH_CHOI_HPP

#include <complex>
#include <random>

#include "qcoh/ptm.hpp"

namespace qcoh {

using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

/// Choi state J(E) = (E x I)(|Omega><Omega|), |Omega> = (|00> + |11>)/sqrt(2),
/// ordered output (x) input. Unit trace for TP channels; PSD iff CP.
Mat4c choi_from_ptm(const PauliTransferMatrix& e);
PauliTransferMatrix ptm_from_choi(const Mat4c& choi);

/// Ascending eigenvalues of the (Hermitized) Choi state.
Vec4 choi_eigenvalues(const PauliTransferMatrix& e);

/// True iff the first row is (1,0,0,0) within tol and all Choi eigenvalues
/// are >= -tol. Default tolerance admits fitted matrices on the CPTP boundary.
bool is_cptp(const PauliTransferMatrix& e, double tol = 1e-8);

/// Applies the channel to a density matrix through its Choi state,
/// E(rho) = 2 Tr_in[J (I x rho^T)]. Used by test oracles that want a route
/// independent of the PTM-vector algebra.
Mat2c apply_via_choi(const Mat4c& choi, const Mat2c& rho);

/// Random CPTP channel from the Ginibre-Choi construction: J0 = A A* with A
/// a 4x4 complex Gaussian matrix, then J = (I x Q^-1/2) J0 (I x Q^-1/2) / 2
/// with Q = Tr_out J0, which enforces trace preservation exactly.
PauliTransferMatrix random_cptp(std::mt19937_64& rng);

/// Haar-random pure qubit state as a density matrix.
Mat2c random_pure_state(std::mt19937_64& rng);

}  // namespace qcoh

#endif
