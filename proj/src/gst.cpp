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

#include "qcoh/gst.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qcoh/choi.hpp"
#include "qcoh/io.hpp"
#include "qcoh/levmar.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

using cd = std::complex<double>;
using Mat82 = Eigen::Matrix<cd, 8, 2>;

// ---- Stinespring parameterization ------------------------------------------
// A CPTP qubit channel is E(rho) = Tr_env[V rho V+] with V: C^2 -> C^2 (x) C^4
// an isometry (row index 4*out + env). Any 8x2 matrix of full rank maps to an
// isometry by Loewdin orthonormalization V (V+V)^(-1/2), which is smooth, so
// plain least squares over the 32 real entries stays exactly CPTP.

Mat82 orthonormalize(const Mat82& v) {
  Eigen::SelfAdjointEigenSolver<Mat2c> es(v.adjoint() * v);
  return v * es.operatorInverseSqrt();
}

PauliTransferMatrix ptm_from_isometry(const Mat82& v) {
  // E(sigma_k) = Tr_env(V sigma_k V+), assembled column by column.
  static const std::array<Mat2c, 4> sig = [] {
    std::array<Mat2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, cd(0, -1), cd(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  Mat4 m;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Matrix<cd, 8, 8> big = v * sig[k] * v.adjoint();
    Mat2c out = Mat2c::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int e = 0; e < 4; ++e) out(a, b) += big(4 * a + e, 4 * b + e);
    for (int j = 0; j < 4; ++j) m(j, k) = 0.5 * (sig[j] * out).trace().real();
  }
  return PauliTransferMatrix(m);
}

Mat82 isometry_from_ptm(const PauliTransferMatrix& e) {
  // Kraus operators from the Choi eigendecomposition, stacked into V.
  const Mat4c j = choi_from_ptm(e);
  Eigen::SelfAdjointEigenSolver<Mat4c> es(0.5 * (j + j.adjoint()));
  Mat82 v = Mat82::Zero();
  for (int a = 0; a < 4; ++a) {
    const double lam = std::max(es.eigenvalues()[a], 0.0);
    const Eigen::Vector4cd w = std::sqrt(2.0 * lam) * es.eigenvectors().col(a);
    // w indexed (out, in) = 2*out + in
    for (int out = 0; out < 2; ++out)
      for (int in = 0; in < 2; ++in) v(4 * out + a, in) = w(2 * out + in);
  }
  return orthonormalize(v);
}

Mat82 unpack(const Eigen::VectorXd& p, int offset) {
  Mat82 v;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 2; ++j) {
      const int base = offset + 4 * i + 2 * j;
      v(i, j) = cd(p[base], p[base + 1]);
    }
  return v;
}

void pack(const Mat82& v, Eigen::VectorXd& p, int offset) {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 2; ++j) {
      const int base = offset + 4 * i + 2 * j;
      p[base] = v(i, j).real();
      p[base + 1] = v(i, j).imag();
    }
}

std::array<double, 250> model_values(const GstDataset& shape,
                                     const std::array<PauliTransferMatrix, 5>& gates) {
  std::array<double, 250> out{};
  std::array<Vec4, 5> qn;
  for (int n = 0; n < 5; ++n) qn[n] = gates[n].apply(shape.rho);
  for (int l = 0; l < 5; ++l)
    for (int m = 0; m < 5; ++m) {
      std::array<Vec4, 5> qmn;
      for (int n = 0; n < 5; ++n) qmn[n] = gates[m].apply(qn[n]);
      for (int n = 0; n < 5; ++n) {
        const Vec4 v = gates[l].apply(qmn[n]);
        out[GstDataset::index(0, l, m, n)] = shape.meas_x.dot(v);
        out[GstDataset::index(1, l, m, n)] = shape.meas_y.dot(v);
      }
    }
  return out;
}

}  // namespace

GateSet GateSet::ideal() {
  GateSet gs;
  gs.gates[kX90] = primitive_ptm(SGate::X90);
  gs.gates[kY90] = primitive_ptm(SGate::Y90);
  gs.gates[kX180] = unitary_rotation(Vec3::UnitX(), std::numbers::pi);
  gs.gates[kY180] = primitive_ptm(PGate::Y180);
  gs.gates[kIdle] = PauliTransferMatrix::identity();
  return gs;
}

bool GateSet::all_cptp(double tol) const {
  for (const auto& g : gates)
    if (!is_cptp(g, tol)) return false;
  return true;
}

GstDataset gen_gst_data(const GateSet& gs, double noise_sigma, uint64_t seed) {
  GstDataset d;
  d.values = model_values(d, gs.gates);
  if (noise_sigma > 0) {
    for (int i = 0; i < 250; ++i) {
      auto rng = make_rng(sub_seed(seed, static_cast<uint64_t>(i)));
      std::normal_distribution<double> gauss(0.0, noise_sigma);
      d.values[i] += gauss(rng);
    }
  }
  return d;
}

GstFitResult fit_gst(const GstDataset& data, const GateSet& init, int max_iter, double tol) {
  Eigen::VectorXd p(5 * 32);
  for (int g = 0; g < 5; ++g) pack(isometry_from_ptm(init.gates[g]), p, 32 * g);

  auto resid = [&](const Eigen::VectorXd& x) {
    std::array<PauliTransferMatrix, 5> gates;
    for (int g = 0; g < 5; ++g) gates[g] = ptm_from_isometry(orthonormalize(unpack(x, 32 * g)));
    const auto mv = model_values(data, gates);
    Eigen::VectorXd r(250);
    for (int i = 0; i < 250; ++i) r[i] = mv[i] - data.values[i];
    return r;
  };

  LevMarOptions lop;
  lop.max_iter = max_iter;
  lop.ftol = tol;
  lop.xtol = 1e-14;
  lop.fd_step = 1e-6;
  const LevMarResult res = levmar(resid, p, lop);

  GstFitResult out;
  for (int g = 0; g < 5; ++g)
    out.gates.gates[g] = ptm_from_isometry(orthonormalize(unpack(res.x, 32 * g)));
  out.residual = 2.0 * res.cost;
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

GstBootstrap gst_bootstrap(const GateSet& fitted, double noise_sigma, int n_resamples,
                           uint64_t seed, int max_iter) {
  if (n_resamples < 10) throw std::invalid_argument("gst_bootstrap: need >= 10 resamples");
  std::array<std::vector<double>, 5> fids;
  for (int r = 0; r < n_resamples; ++r) {
    const GstDataset d = gen_gst_data(fitted, noise_sigma, sub_seed(seed, r));
    const GstFitResult fr = fit_gst(d, fitted, max_iter);
    const GateSet ideal = GateSet::ideal();
    for (int g = 0; g < 5; ++g) {
      const PauliTransferMatrix err = compose(fr.gates.gates[g], ideal.gates[g].inverse());
      fids[g].push_back(1.0 - bepg(err));
    }
  }
  GstBootstrap out;
  for (int g = 0; g < 5; ++g) {
    std::sort(fids[g].begin(), fids[g].end());
    const auto n = fids[g].size();
    out.fidelity_lo[g] = fids[g][static_cast<size_t>(0.025 * (n - 1))];
    out.fidelity_hi[g] = fids[g][static_cast<size_t>(std::ceil(0.975 * (n - 1)))];
  }
  return out;
}

double avg_unitarity(const std::array<PauliTransferMatrix, 24>& noise) {
  double u = 0;
  for (const auto& e : noise) u += unitarity(e);
  return u / 24.0;
}

double unitarity_of_avg(const std::array<PauliTransferMatrix, 24>& noise) {
  Mat4 avg = Mat4::Zero();
  for (const auto& e : noise) avg += e.m;
  return unitarity(PauliTransferMatrix(avg / 24.0));
}

CliffordNoise clifford_from_gateset(const GateSet& gs) {
  CliffordNoise out;
  out.noise = NoiseModel::from_primitives(
      compose(gs.gates[kIdle], PauliTransferMatrix::identity().inverse()),
      compose(gs.gates[kX90], primitive_ptm(SGate::X90).inverse()),
      compose(gs.gates[kY90], primitive_ptm(SGate::Y90).inverse()),
      compose(gs.gates[kY180], primitive_ptm(PGate::Y180).inverse()));

  const GateSet ideal = GateSet::ideal();
  for (int g = 0; g < 5; ++g) {
    const PauliTransferMatrix err = compose(gs.gates[g], ideal.gates[g].inverse());
    out.metrics.gate_fidelity[g] = 1.0 - bepg(err);
  }
  out.metrics.avg_unitarity = avg_unitarity(out.noise.per_gate);
  out.metrics.unitarity_of_avg = unitarity_of_avg(out.noise.per_gate);
  double eps = 0;
  for (const auto& e : out.noise.per_gate) eps += bepg(e);
  out.metrics.clifford_epsilon = eps / 24.0;
  out.metrics.clifford_epsilon_in =
      0.5 * (1.0 - std::sqrt(std::max(out.metrics.avg_unitarity, 0.0)));
  return out;
}

GateSet paper_gateset(const std::string& condition) {
  const std::string path = std::string(QCOH_DATA_DIR) + "/paper_gst_ptms.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("paper_gateset: cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains(condition))
    throw std::invalid_argument("paper_gateset: unknown condition " + condition);
  GateSet gs;
  for (int g = 0; g < 5; ++g) gs.gates[g] = ptm_from_json(j[condition][kPrimitiveNames[g]]);
  return gs;
}

}  // namespace qcoh
