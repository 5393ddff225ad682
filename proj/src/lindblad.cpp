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

#include "qcoh/lindblad.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qcoh {

namespace {

// Bloch-form generator for the master equation in the header comment, acting
// on (1, x, y, z) column vectors: precession r' = h x r with
// h = (b1 I, b1 Q, -Delta), transverse decay at 1/T2, longitudinal relaxation
// toward +z at 1/T1. The first row is zero, so trace preservation is exact.
Mat4 bloch_generator(double hx, double hy, double hz, double g1, double g2) {
  Mat4 l = Mat4::Zero();
  l(1, 1) = -g2;
  l(1, 2) = -hz;
  l(1, 3) = hy;
  l(2, 1) = hz;
  l(2, 2) = -g2;
  l(2, 3) = -hx;
  l(3, 1) = -hy;
  l(3, 2) = hx;
  l(3, 3) = -g1;
  l(3, 0) = g1;
  return l;
}

// One RK4 step of Phi' = L Phi for constant L.
Mat4 rk4_step(const Mat4& l, const Mat4& phi, double h) {
  const Mat4 k1 = l * phi;
  const Mat4 k2 = l * (phi + 0.5 * h * k1);
  const Mat4 k3 = l * (phi + 0.5 * h * k2);
  const Mat4 k4 = l * (phi + h * k3);
  return phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Walks the waveform, invoking emit(t, Phi) after every integrator substep.
template <typename Emit>
void propagate(const Waveform& wf, const LindbladParams& params, double delta, double b1_scale,
               Emit&& emit) {
  const double g1 = 1.0 / params.t1;
  const double g2 = 1.0 / params.t2;
  const int sub = std::max(1, static_cast<int>(std::ceil(wf.dt / params.dt - 1e-12)));
  const double h = wf.dt / sub;

  Mat4 phi = Mat4::Identity();
  double t = 0.0;
  for (size_t k = 0; k < wf.samples.size(); ++k) {
    const std::complex<double> drive = b1_scale * wf.drive(k);
    const Mat4 l = bloch_generator(drive.real(), drive.imag(), -delta, g1, g2);
    for (int s = 0; s < sub; ++s) {
      phi = rk4_step(l, phi, h);
      t += h;
      emit(t, phi);
    }
  }
}

}  // namespace

// ---- distributions ----------------------------------------------------------

ProbabilityDistribution ProbabilityDistribution::delta(double x0) {
  ProbabilityDistribution d;
  d.kind = Kind::Delta;
  d.points = {x0};
  d.weights = {1.0};
  return d;
}

namespace {

// Uniform cells over [center - span, center + span]; weight of each cell is
// its exact mass under the given CDF, renormalized; node at the midpoint.
ProbabilityDistribution cdf_cells(ProbabilityDistribution::Kind kind, double center, double span,
                                  int n, const std::function<double(double)>& cdf) {
  if (n < 1) throw std::invalid_argument("distribution: need at least one point");
  ProbabilityDistribution d;
  d.kind = kind;
  d.points.resize(n);
  d.weights.resize(n);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    const double a = center - span + 2.0 * span * i / n;
    const double b = center - span + 2.0 * span * (i + 1) / n;
    d.points[i] = 0.5 * (a + b);
    d.weights[i] = cdf(b) - cdf(a);
    total += d.weights[i];
  }
  for (auto& w : d.weights) w /= total;
  return d;
}

}  // namespace

ProbabilityDistribution ProbabilityDistribution::lorentzian(double center, double hwhm, int n,
                                                            double span_hwhm) {
  if (hwhm <= 0) throw std::invalid_argument("lorentzian: hwhm must be > 0");
  return cdf_cells(Kind::Lorentzian, center, span_hwhm * hwhm, n, [&](double x) {
    return 0.5 + std::atan((x - center) / hwhm) / std::numbers::pi;
  });
}

ProbabilityDistribution ProbabilityDistribution::gaussian(double center, double sigma, int n,
                                                          double span_sigma) {
  if (sigma <= 0) throw std::invalid_argument("gaussian: sigma must be > 0");
  return cdf_cells(Kind::Gaussian, center, span_sigma * sigma, n, [&](double x) {
    return 0.5 * (1.0 + std::erf((x - center) / (sigma * std::numbers::sqrt2)));
  });
}

ProbabilityDistribution ProbabilityDistribution::mixture(
    const std::vector<std::pair<ProbabilityDistribution, double>>& components) {
  if (components.empty()) throw std::invalid_argument("mixture: empty");
  ProbabilityDistribution d;
  d.kind = Kind::Mixture;
  d.points.clear();
  d.weights.clear();
  double total = 0;
  for (const auto& [c, w] : components) total += w;
  for (const auto& [c, w] : components)
    for (size_t i = 0; i < c.points.size(); ++i) {
      d.points.push_back(c.points[i]);
      d.weights.push_back(c.weights[i] * w / total);
    }
  return d;
}

ProbabilityDistribution ProbabilityDistribution::tabulated(std::vector<double> pts,
                                                           std::vector<double> wts) {
  if (pts.size() != wts.size() || pts.empty())
    throw std::invalid_argument("tabulated: points/weights size mismatch");
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i] <= pts[i - 1])
      throw std::invalid_argument("tabulated: points must be strictly increasing");
  double total = 0;
  for (double w : wts) {
    if (w < 0) throw std::invalid_argument("tabulated: negative weight");
    total += w;
  }
  if (total <= 0) throw std::invalid_argument("tabulated: zero total weight");
  for (auto& w : wts) w /= total;
  ProbabilityDistribution d;
  d.kind = Kind::Tabulated;
  d.points = std::move(pts);
  d.weights = std::move(wts);
  return d;
}

void ProbabilityDistribution::validate() const {
  if (points.size() != weights.size() || points.empty())
    throw std::invalid_argument("distribution: empty or inconsistent quadrature");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("distribution: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("distribution: weights must sum to 1");
}

void LindbladParams::validate() const {
  if (!(t1 > 0) || !(t2 > 0)) throw std::invalid_argument("lindblad: T1, T2 must be > 0");
  if (t2 > 2.0 * t1) throw std::invalid_argument("lindblad: T2 must not exceed 2 T1");
  if (!(dt > 0)) throw std::invalid_argument("lindblad: dt must be > 0");
  larmor.validate();
  b1.validate();
}

// ---- density matrices --------------------------------------------------------

DensityMatrix DensityMatrix::from_bloch(const Vec3& b) {
  using cd = std::complex<double>;
  DensityMatrix d;
  d.rho(0, 0) = 0.5 * (1.0 + b[2]);
  d.rho(1, 1) = 0.5 * (1.0 - b[2]);
  d.rho(0, 1) = 0.5 * cd(b[0], -b[1]);
  d.rho(1, 0) = 0.5 * cd(b[0], b[1]);
  return d;
}

Vec3 DensityMatrix::bloch() const {
  return Vec3(2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real());
}

bool DensityMatrix::is_physical(double tol) const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) return false;
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
    return false;
  Eigen::SelfAdjointEigenSolver<Mat2c> es(rho);
  return es.eigenvalues().minCoeff() >= -tol;
}

// ---- integration --------------------------------------------------------------

Trajectory evolve(const DensityMatrix& rho0, const Waveform& wf, const LindbladParams& params,
                  double delta, double b1_scale) {
  params.validate();
  if (!wf.samples.empty() && params.dt > wf.dt * (1.0 + 1e-12))
    throw std::invalid_argument("evolve: integrator step exceeds waveform sample period");
  if (!rho0.is_physical()) throw std::invalid_argument("evolve: unphysical initial state");

  const Vec3 b = rho0.bloch();
  const Vec4 r0(1.0, b[0], b[1], b[2]);

  Trajectory traj;
  traj.t.push_back(0.0);
  traj.bloch.push_back(b);
  propagate(wf, params, delta, b1_scale, [&](double t, const Mat4& phi) {
    const Vec4 r = phi * r0;
    traj.t.push_back(t);
    traj.bloch.push_back(r.tail<3>());
  });
  return traj;
}

Trajectory ensemble_average(const DensityMatrix& rho0, const Waveform& wf,
                            const LindbladParams& params) {
  params.validate();
  Trajectory avg;
  bool first = true;
  for (size_t i = 0; i < params.larmor.points.size(); ++i) {
    for (size_t j = 0; j < params.b1.points.size(); ++j) {
      const double w = params.larmor.weights[i] * params.b1.weights[j];
      Trajectory t = evolve(rho0, wf, params, params.larmor.points[i], params.b1.points[j]);
      if (first) {
        avg.t = t.t;
        avg.bloch.assign(t.bloch.size(), Vec3::Zero());
        first = false;
      }
      for (size_t k = 0; k < t.bloch.size(); ++k) avg.bloch[k] += w * t.bloch[k];
    }
  }
  if (first) throw std::invalid_argument("ensemble_average: empty quadrature");
  return avg;
}

PauliTransferMatrix gate_ptm_from_pulse(const Waveform& wf, const LindbladParams& params) {
  params.validate();
  // A zero-duration pulse is the identity channel.
  Mat4 avg = Mat4::Zero();
  for (size_t i = 0; i < params.larmor.points.size(); ++i) {
    for (size_t j = 0; j < params.b1.points.size(); ++j) {
      const double w = params.larmor.weights[i] * params.b1.weights[j];
      Mat4 final_phi = Mat4::Identity();
      propagate(wf, params, params.larmor.points[i], params.b1.points[j],
                [&](double, const Mat4& phi) { final_phi = phi; });
      avg += w * final_phi;
    }
  }
  avg.row(0) << 1, 0, 0, 0;  // exact TP projection
  PauliTransferMatrix out(avg);

  Vec4 ev = choi_eigenvalues(out);
  double neg = 0;
  for (int k = 0; k < 4; ++k) neg += std::min(ev[k], 0.0);
  if (-neg > 0.05)
    throw std::runtime_error("gate_ptm_from_pulse: grossly non-CP result (quadrature failure)");
  return out;
}

Trajectory rabi_trajectory(const RabiModel& model, const std::vector<double>& times) {
  const double w1 = model.omega1();
  if (!(w1 > 0)) throw std::invalid_argument("rabi_trajectory: omega1 must be > 0");
  const double st = model.omega / w1;
  const double ct = -model.delta / w1;
  const double cpsi = std::cos(model.psi);
  const double spsi = std::sin(model.psi);

  Trajectory traj;
  traj.t = times;
  traj.bloch.resize(times.size());
  for (size_t k = 0; k < times.size(); ++k) {
    const double tau = times[k] - model.t0;
    const double s2 = std::sin(0.5 * w1 * tau) * std::sin(0.5 * w1 * tau);
    const double sw = std::sin(w1 * tau);
    // drive-frame components
    const double x = s2 * 2.0 * st * ct * cpsi + sw * st * spsi;
    const double y = s2 * 2.0 * st * ct * spsi - sw * st * cpsi;
    const double z = 1.0 - 2.0 * s2 * st * st;
    // rotate back by the detuning phase into the qubit frame
    const double ph = model.delta * tau;
    traj.bloch[k] =
        Vec3(x * std::cos(ph) + y * std::sin(ph), -x * std::sin(ph) + y * std::cos(ph), z);
  }
  return traj;
}

}  // namespace qcoh
