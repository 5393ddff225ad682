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

#ifndef QCOH_PTM_HPP
#define QCOH_PTM_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qcoh {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Pauli transfer matrix of a single-qubit channel: the real 4x4 matrix
/// R[j][k] = Tr[sigma_j E(sigma_k)] / 2 in the basis {I, sx, sy, sz}.
/// A trace-preserving channel has first row (1, 0, 0, 0) and block form
///
///     R = | 1    0  |
///         | e_n  E_u|
///
/// with E_u the 3x3 unital part and e_n the non-unital 3-vector. States are
/// column vectors (1, bx, by, bz); channels compose by matrix product with the
/// rightmost factor applied first.
struct PauliTransferMatrix {
  Mat4 m = Mat4::Identity();

  PauliTransferMatrix() = default;
  explicit PauliTransferMatrix(const Mat4& mat) : m(mat) {}

  static PauliTransferMatrix identity() { return PauliTransferMatrix(); }

  Mat3 unital() const { return m.block<3, 3>(1, 1); }
  Vec3 nonunital() const { return m.block<3, 1>(1, 0); }

  bool is_trace_preserving(double tol = 1e-9) const {
    return std::abs(m(0, 0) - 1.0) <= tol && m.block<1, 3>(0, 1).cwiseAbs().maxCoeff() <= tol;
  }

  /// Applies the channel to a state vector (1, bx, by, bz).
  Vec4 apply(const Vec4& state) const { return m * state; }

  PauliTransferMatrix inverse() const { return PauliTransferMatrix(m.inverse()); }
  PauliTransferMatrix transpose() const { return PauliTransferMatrix(m.transpose()); }

  bool approx_equal(const PauliTransferMatrix& other, double tol = 1e-9) const {
    return (m - other.m).cwiseAbs().maxCoeff() <= tol;
  }
};

/// b applied first, then a (matrix product a.m * b.m).
PauliTransferMatrix compose(const PauliTransferMatrix& a, const PauliTransferMatrix& b);

// ---- channel factories -----------------------------------------------------

enum class ChannelFamily { Depolarizing, Dephasing, AmplitudeDamping, UnitaryRotation };

PauliTransferMatrix depolarizing(double p);
PauliTransferMatrix dephasing(double p);
PauliTransferMatrix amplitude_damping(double gamma);
/// Rotation by theta about the (unit) axis; PTM of U = exp(-i theta n.sigma/2).
PauliTransferMatrix unitary_rotation(const Vec3& axis, double theta);

/// Dispatching constructor used by the config-driven runner. params:
/// depolarizing/dephasing/amplitude_damping take {p}; unitary_rotation takes
/// {nx, ny, nz, theta}.
PauliTransferMatrix make_channel(ChannelFamily family, const std::vector<double>& params);
ChannelFamily channel_family_from_name(const std::string& name);

// ---- scalar error metrics --------------------------------------------------

/// eps = (1/6) Tr(1 - E_u); equals 1 - F with F the Haar-average fidelity.
/// (In dimension d: eps = 1 - [Tr E_u / (d^2 - 1) * (d - 1) + ... ]; only d = 2
/// is implemented here.)
double bepg(const PauliTransferMatrix& e);

/// u = (1/3) Tr(E_u^T E_u), the Haar-average squared length change of the
/// traceless component. (General d: u = d/(d-1) * average of Tr[E(psi - 1/d)]^2.)
double unitarity(const PauliTransferMatrix& e);

/// Closed-form incoherent error per gate, eps_in = (1 - sqrt(u)) / 2.
/// Accurate to eps_in^2 / 2 relative to the unitary-correction optimum.
double iepg(const PauliTransferMatrix& e);

struct ChannelMetrics {
  double epsilon = 0;      // BEPG
  double fidelity = 1;     // 1 - epsilon
  double u = 1;            // unitarity
  double epsilon_in = 0;   // IEPG, closed form
  double epsilon_coh = 0;  // BEPG of the composite unitary correction
};

ChannelMetrics channel_metrics(const PauliTransferMatrix& e);

// ---- canonical form ---------------------------------------------------------

/// Signed SVD of the unital block with both factors in SO(3):
/// E_u = u_corr * diag(sigma) * v_corr, sigma ordered by decreasing magnitude
/// with at most the last entry negative. The corrected channel
/// E' = U^-1 o E o V^-1 has unital part diag(sigma) and attains the minimal
/// BEPG over unitary corrections; its z non-unital component is `lambda`.
/// delta and c come from sigma = 1 - eps(E') * delta and
/// u = 1 - 4 eps(E') + (4 + c) eps(E')^2.
struct CanonicalForm {
  Mat3 u_corr = Mat3::Identity();
  Vec3 sigma = Vec3::Ones();
  double lambda = 0;
  Mat3 v_corr = Mat3::Identity();
  Vec3 delta = Vec3::Constant(2.0);
  double c = 0;

  /// The corrected channel E' (full PTM, including the rotated non-unital
  /// vector, of which lambda is the z component).
  PauliTransferMatrix corrected_channel;

  /// BEPG of E', i.e. the SVD-exact incoherent error.
  double exact_iepg() const;
};

CanonicalForm canonicalize(const PauliTransferMatrix& e);

/// eps_coh = eps(W) with W = V o U the composite of the canonicalizing
/// corrections; equals eps(E) - eps_in(E) up to O(eps_in * eps(W)).
double coherent_error(const PauliTransferMatrix& e);

// ---- diamond-norm interval --------------------------------------------------

/// Interval bracketing the optimal worst-case error per gate achievable by
/// unitary corrections: [1.5 eps_in, (1.5 + 3 sqrt(2)) eps_in].
struct DiamondInterval {
  double lower = 0;
  double upper = 0;
  double midpoint() const { return 0.5 * (lower + upper); }
  double half_width() const { return 0.5 * (upper - lower); }
};

DiamondInterval diamond_bounds(double epsilon_in);
/// Widens the interval by first-order propagation of the eps_in uncertainty:
/// lower at eps_in - sigma, upper at eps_in + sigma.
DiamondInterval diamond_bounds(double epsilon_in, double sigma);

}  // namespace qcoh

#endif
