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

#include "qcoh/ptm.hpp"

#include <cmath>
#include <stdexcept>

namespace qcoh {

PauliTransferMatrix compose(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  return PauliTransferMatrix(a.m * b.m);
}

PauliTransferMatrix depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p must be in [0, 1]");
  Mat4 m = Mat4::Identity();
  m(1, 1) = m(2, 2) = m(3, 3) = 1.0 - p;
  return PauliTransferMatrix(m);
}

PauliTransferMatrix dephasing(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("dephasing: p must be in [0, 1]");
  Mat4 m = Mat4::Identity();
  m(1, 1) = m(2, 2) = 1.0 - p;
  return PauliTransferMatrix(m);
}

PauliTransferMatrix amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("amplitude_damping: gamma must be in [0, 1]");
  Mat4 m = Mat4::Identity();
  const double s = std::sqrt(1.0 - gamma);
  m(1, 1) = s;
  m(2, 2) = s;
  m(3, 3) = 1.0 - gamma;
  m(3, 0) = gamma;  // decay toward +z
  return PauliTransferMatrix(m);
}

PauliTransferMatrix unitary_rotation(const Vec3& axis, double theta) {
  const double n = axis.norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw std::invalid_argument("unitary_rotation: axis must be a unit vector");
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) = Eigen::AngleAxisd(theta, axis / n).toRotationMatrix();
  return PauliTransferMatrix(m);
}

PauliTransferMatrix make_channel(ChannelFamily family, const std::vector<double>& params) {
  switch (family) {
    case ChannelFamily::Depolarizing:
      if (params.size() != 1) throw std::invalid_argument("depolarizing takes one parameter");
      return depolarizing(params[0]);
    case ChannelFamily::Dephasing:
      if (params.size() != 1) throw std::invalid_argument("dephasing takes one parameter");
      return dephasing(params[0]);
    case ChannelFamily::AmplitudeDamping:
      if (params.size() != 1)
        throw std::invalid_argument("amplitude_damping takes one parameter");
      return amplitude_damping(params[0]);
    case ChannelFamily::UnitaryRotation:
      if (params.size() != 4)
        throw std::invalid_argument("unitary_rotation takes {nx, ny, nz, theta}");
      return unitary_rotation(Vec3(params[0], params[1], params[2]), params[3]);
  }
  throw std::invalid_argument("unknown channel family");
}

ChannelFamily channel_family_from_name(const std::string& name) {
  if (name == "depolarizing") return ChannelFamily::Depolarizing;
  if (name == "dephasing") return ChannelFamily::Dephasing;
  if (name == "amplitude_damping") return ChannelFamily::AmplitudeDamping;
  if (name == "unitary_rotation") return ChannelFamily::UnitaryRotation;
  throw std::invalid_argument("unknown channel family: " + name);
}

double bepg(const PauliTransferMatrix& e) {
  if (!e.is_trace_preserving(1e-6))
    throw std::invalid_argument("bepg: channel is not trace preserving");
  return (3.0 - e.unital().trace()) / 6.0;
}

double unitarity(const PauliTransferMatrix& e) {
  const Mat3 eu = e.unital();
  return (eu.transpose() * eu).trace() / 3.0;
}

double iepg(const PauliTransferMatrix& e) {
  const double u = unitarity(e);
  if (u < 0.0) throw std::invalid_argument("iepg: negative unitarity");
  return 0.5 * (1.0 - std::sqrt(u));
}

ChannelMetrics channel_metrics(const PauliTransferMatrix& e) {
  ChannelMetrics out;
  out.epsilon = bepg(e);
  out.fidelity = 1.0 - out.epsilon;
  out.u = unitarity(e);
  out.epsilon_in = 0.5 * (1.0 - std::sqrt(std::max(out.u, 0.0)));
  out.epsilon_coh = coherent_error(e);
  return out;
}

double CanonicalForm::exact_iepg() const { return (3.0 - sigma.sum()) / 6.0; }

CanonicalForm canonicalize(const PauliTransferMatrix& e) {
  CanonicalForm out;
  const Mat3 eu = e.unital();

  Eigen::JacobiSVD<Mat3> svd(eu, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  Vec3 s = svd.singularValues();  // descending, nonnegative

  // Force both factors into SO(3): flip the third column of any factor with
  // determinant -1. When exactly one flips, the smallest singular value
  // changes sign with it.
  const double du = u.determinant() > 0 ? 1.0 : -1.0;
  const double dv = v.determinant() > 0 ? 1.0 : -1.0;
  u.col(2) *= du;
  v.col(2) *= dv;
  s(2) *= du * dv;

  out.u_corr = u;
  out.sigma = s;
  out.v_corr = v.transpose();  // E_u = u_corr * diag(sigma) * v_corr

  // Corrected channel E' = U^-1 o E o V^-1 with the rotations above.
  Mat4 corr = Mat4::Identity();
  corr.block<3, 3>(1, 1) = s.asDiagonal();
  corr.block<3, 1>(1, 0) = u.transpose() * e.nonunital();
  out.corrected_channel = PauliTransferMatrix(corr);
  out.lambda = corr(3, 0);

  const double eps_prime = out.exact_iepg();
  if (std::abs(eps_prime) > 1e-14) {
    out.delta = (Vec3::Ones() - s) / eps_prime;
    out.c = out.delta.squaredNorm() / 3.0 - 4.0;
  } else {
    // Unitary channel: sigma = (1,1,1); take the delta -> 2*ones limit.
    out.delta = Vec3::Constant(2.0);
    out.c = 0.0;
  }
  return out;
}

double coherent_error(const PauliTransferMatrix& e) {
  const CanonicalForm cf = canonicalize(e);
  // W = V o U, so W_u = v_corr * u_corr.
  const Mat3 wu = cf.v_corr * cf.u_corr;
  return (3.0 - wu.trace()) / 6.0;
}

DiamondInterval diamond_bounds(double epsilon_in) { return diamond_bounds(epsilon_in, 0.0); }

DiamondInterval diamond_bounds(double epsilon_in, double sigma) {
  if (epsilon_in < 0.0) throw std::invalid_argument("diamond_bounds: epsilon_in must be >= 0");
  if (sigma < 0.0) throw std::invalid_argument("diamond_bounds: sigma must be >= 0");
  static const double kUpperSlope = 1.5 + 3.0 * std::sqrt(2.0);
  DiamondInterval out;
  out.lower = 1.5 * std::max(epsilon_in - sigma, 0.0);
  out.upper = kUpperSlope * (epsilon_in + sigma);
  return out;
}

}  // namespace qcoh
