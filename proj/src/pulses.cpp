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

#include "qcoh/pulses.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcoh/levmar.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

using cd = std::complex<double>;

std::vector<cd> fft(std::vector<cd> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cd> out(n);
  fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), sign,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

// FFT bin frequency in Hz for a length-n transform at sample period dt.
double bin_freq(int k, int n, double dt) {
  const int kk = k <= n / 2 ? k : k - n;
  return kk / (n * dt);
}

// Shared filtering core: y = IFFT(H(f) . FFT(pad4(w))), padding removed.
template <typename Filter>
Waveform apply_filter(const Waveform& w, const TransferFunction& t, Filter&& filter) {
  w.validate();
  t.validate();
  const int n0 = static_cast<int>(w.samples.size());
  const int n = 4 * n0;

  std::vector<cd> buf(w.samples.begin(), w.samples.end());
  buf.resize(n, 0.0);
  std::vector<cd> spec = fft(std::move(buf), FFTW_FORWARD);
  for (int k = 0; k < n; ++k) {
    const double f = bin_freq(k, n, w.dt);
    if (f < t.freqs_hz.front() || f > t.freqs_hz.back())
      throw std::invalid_argument("transfer function does not cover the waveform FFT grid");
    spec[k] *= filter(t.at(f));
  }
  std::vector<cd> back = fft(std::move(spec), FFTW_BACKWARD);
  Waveform out = w;
  for (int k = 0; k < n0; ++k) out.samples[k] = back[k] / static_cast<double>(n);
  return out;
}

Mat2c pauli_combo(double cx, double cy, double cz) {
  Mat2c m;
  m << cd(cz, 0), cd(cx, -cy), cd(cx, cy), cd(-cz, 0);
  return m;
}

// exp(-i H) for Hermitian traceless H = (hx sx + hy sy + hz sz)/2.
Mat2c su2_exp(double hx, double hy, double hz) {
  const double a = 0.5 * std::sqrt(hx * hx + hy * hy + hz * hz);
  if (a < 1e-300) return Mat2c::Identity();
  const double s = std::sin(a) / (2.0 * a);
  return std::cos(a) * Mat2c::Identity() - cd(0, 1) * s * pauli_combo(hx, hy, hz);
}

// Frechet derivative of exp at A = -iH in direction E = -i dH, for Hermitian H,
// via divided differences in the eigenbasis of H.
Mat2c su2_exp_frechet(const Mat2c& h, const Mat2c& dh) {
  Eigen::SelfAdjointEigenSolver<Mat2c> es(h);
  const Eigen::Vector2d d = es.eigenvalues();
  const Mat2c q = es.eigenvectors();
  const Mat2c e = q.adjoint() * (cd(0, -1) * dh) * q;
  Mat2c f;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const cd la(0, -d[a]), lb(0, -d[b]);
      if (std::abs(d[a] - d[b]) < 1e-12)
        f(a, b) = e(a, b) * std::exp(la);
      else
        f(a, b) = e(a, b) * (std::exp(la) - std::exp(lb)) / (la - lb);
    }
  return q * f * q.adjoint();
}

Mat2c unitary_from_ptm(const PauliTransferMatrix& target) {
  if (std::abs(unitarity(target) - 1.0) > 1e-9)
    throw std::invalid_argument("design_pulse: target must be unitary");
  const Eigen::AngleAxisd aa(Mat3(target.unital()));
  const Vec3 n = aa.axis();
  const double half = 0.5 * aa.angle();
  return std::cos(half) * Mat2c::Identity() -
         cd(0, 1) * std::sin(half) * pauli_combo(n[0], n[1], n[2]);
}

}  // namespace

// ---- transfer function --------------------------------------------------------

void TransferFunction::validate() const {
  if (freqs_hz.size() != response.size() || freqs_hz.size() < 2)
    throw std::invalid_argument("transfer function: need >= 2 tabulated points");
  for (size_t i = 1; i < freqs_hz.size(); ++i)
    if (freqs_hz[i] <= freqs_hz[i - 1])
      throw std::invalid_argument("transfer function: frequencies must be strictly increasing");
}

cd TransferFunction::at(double f_hz) const {
  const auto it = std::lower_bound(freqs_hz.begin(), freqs_hz.end(), f_hz);
  if (it == freqs_hz.begin()) return response.front();
  if (it == freqs_hz.end()) return response.back();
  const size_t i = it - freqs_hz.begin();
  const double w = (f_hz - freqs_hz[i - 1]) / (freqs_hz[i] - freqs_hz[i - 1]);
  return (1.0 - w) * response[i - 1] + w * response[i];
}

TransferFunction TransferFunction::flat(cd c, double f_max_hz) {
  TransferFunction t;
  t.freqs_hz = {-f_max_hz, f_max_hz};
  t.response = {c, c};
  return t;
}

TransferFunction TransferFunction::one_pole(double f_cut_hz, double f_max_hz, int n) {
  TransferFunction t;
  t.freqs_hz.resize(n);
  t.response.resize(n);
  for (int i = 0; i < n; ++i) {
    const double f = -f_max_hz + 2.0 * f_max_hz * i / (n - 1);
    t.freqs_hz[i] = f;
    t.response[i] = 1.0 / cd(1.0, f / f_cut_hz);
  }
  return t;
}

TransferFunction TransferFunction::with_phase_slope(double slope_s) const {
  TransferFunction out = *this;
  for (size_t i = 0; i < freqs_hz.size(); ++i)
    out.response[i] *= std::polar(1.0, -2.0 * std::numbers::pi * freqs_hz[i] * slope_s);
  return out;
}

Waveform distort(const Waveform& w, const TransferFunction& t) {
  return apply_filter(w, t, [](cd tf) { return tf; });
}

Waveform predistort(const Waveform& w, const TransferFunction& t) {
  double max_abs = 0;
  for (const cd& r : t.response) max_abs = std::max(max_abs, std::abs(r));
  const double eps = t.epsilon_reg >= 0 ? t.epsilon_reg : 0.05 * max_abs;
  return apply_filter(w, t, [eps](cd tf) { return std::conj(tf) / (std::norm(tf) + eps * eps); });
}

// ---- transfer-point fitting -----------------------------------------------------

TransferPointFit fit_transfer_point(const std::vector<double>& times,
                                    const std::vector<double>& sx,
                                    const std::vector<double>& sy, double delta, cd nominal,
                                    double sensitivity_threshold) {
  if (times.size() != sx.size() || times.size() != sy.size() || times.size() < 4)
    throw std::invalid_argument("fit_transfer_point: inconsistent or too-short trajectories");
  const double omega0 = std::abs(nominal);
  const double psi0 = std::arg(nominal);
  if (omega0 <= 0) throw std::invalid_argument("fit_transfer_point: zero nominal amplitude");

  // Require the trace to resolve at least two periods of the nominal omega1.
  const double w1_nom = std::hypot(delta, omega0);
  if (w1_nom * (times.back() - times.front()) < 4.0 * std::numbers::pi)
    throw std::invalid_argument("fit_transfer_point: trajectory shorter than two Rabi periods");

  const int n = static_cast<int>(times.size());
  auto resid = [&](const Eigen::VectorXd& p) {
    RabiModel m;
    m.delta = delta;
    m.omega = p[0];
    m.psi = p[1];
    const Trajectory traj = rabi_trajectory(m, times);
    Eigen::VectorXd r(2 * n);
    for (int i = 0; i < n; ++i) {
      r[i] = traj.bloch[i][0] - sx[i];
      r[n + i] = traj.bloch[i][1] - sy[i];
    }
    return r;
  };

  Eigen::VectorXd p0(2);
  p0 << omega0, psi0;
  LevMarOptions lop;
  lop.fd_step = 1e-8;
  const LevMarResult res = levmar(resid, p0, lop);

  TransferPointFit out;
  out.omega = std::abs(res.x[0]);
  out.psi = res.x[0] < 0 ? res.x[1] + std::numbers::pi : res.x[1];
  out.t = std::polar(out.omega, out.psi) / nominal;
  out.converged = res.converged;
  out.low_confidence = delta != 0.0 && std::abs(out.omega / delta) < sensitivity_threshold;
  return out;
}

// ---- pulse design ----------------------------------------------------------------

DesignedPulse design_pulse(const PauliTransferMatrix& target, double duration, int n_samples,
                           const ProbabilityDistribution& larmor,
                           const ProbabilityDistribution& b1, const DesignOptions& opt) {
  if (n_samples < 1 || duration <= 0)
    throw std::invalid_argument("design_pulse: bad duration/sample count");
  larmor.validate();
  b1.validate();
  const Mat2c u_target = unitary_from_ptm(target);
  const double dt = duration / n_samples;

  struct Point {
    double delta, scale, weight;
  };
  std::vector<Point> pts;
  for (size_t i = 0; i < larmor.points.size(); ++i)
    for (size_t j = 0; j < b1.points.size(); ++j)
      pts.push_back({larmor.points[i], b1.points[j], larmor.weights[i] * b1.weights[j]});

  // Dimensionless controls: rotation angle per sample, x = (I dt, Q dt).
  Eigen::VectorXd x(2 * n_samples);
  {
    // start from a square pulse for the target rotation (about its xy-axis
    // projection when present), plus a little seeded noise to break symmetry
    const Eigen::AngleAxisd aa(Mat3(target.unital()));
    const Vec3 ax = aa.axis();
    const double axy = std::hypot(ax[0], ax[1]);
    auto rng = make_rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 0.02);
    for (int k = 0; k < n_samples; ++k) {
      const double amp = axy > 1e-9 ? aa.angle() * axy / n_samples : 0.0;
      const double ph = axy > 1e-9 ? std::atan2(ax[1], ax[0]) : 0.0;
      x[k] = amp * std::cos(ph) + gauss(rng);
      x[n_samples + k] = amp * std::sin(ph) + gauss(rng);
    }
  }

  auto fidelity_and_grad = [&](const Eigen::VectorXd& c, Eigen::VectorXd* grad) {
    if (grad) grad->setZero(2 * n_samples);
    double fsum = 0;
    std::vector<Mat2c> fwd(n_samples + 1), props(n_samples);
    for (const Point& p : pts) {
      fwd[0] = Mat2c::Identity();
      for (int k = 0; k < n_samples; ++k) {
        props[k] = su2_exp(p.scale * c[k], p.scale * c[n_samples + k], -p.delta * dt);
        fwd[k + 1] = props[k] * fwd[k];
      }
      const cd z = (u_target.adjoint() * fwd[n_samples]).trace();
      fsum += p.weight * (std::norm(z) + 2.0) / 6.0;
      if (!grad) continue;
      Mat2c back = Mat2c::Identity();
      for (int k = n_samples - 1; k >= 0; --k) {
        const Mat2c h = 0.5 * pauli_combo(p.scale * c[k], p.scale * c[n_samples + k],
                                          -p.delta * dt);
        const Mat2c pre = u_target.adjoint() * back;
        const Mat2c dx = su2_exp_frechet(h, 0.5 * p.scale * pauli_combo(1, 0, 0));
        const Mat2c dy = su2_exp_frechet(h, 0.5 * p.scale * pauli_combo(0, 1, 0));
        (*grad)[k] += p.weight * (std::conj(z) * (pre * dx * fwd[k]).trace()).real() / 3.0;
        (*grad)[n_samples + k] +=
            p.weight * (std::conj(z) * (pre * dy * fwd[k]).trace()).real() / 3.0;
        back = back * props[k];
      }
    }
    return fsum;
  };

  DesignedPulse out;
  Eigen::VectorXd grad(2 * n_samples);
  Eigen::VectorXd best = x;
  double best_f = fidelity_and_grad(x, nullptr);
  for (int it = 0; it < opt.max_iter; ++it) {
    out.iterations = it + 1;
    const double f = fidelity_and_grad(x, &grad);
    if (f > best_f) {
      best_f = f;
      best = x;
    }
    if (best_f >= opt.target_fidelity) {
      out.reached_target = true;
      break;
    }
    x += opt.step * static_cast<double>(n_samples) * grad;
  }

  out.fidelity = best_f;
  out.waveform.dt = dt;
  out.waveform.samples.resize(n_samples);
  for (int k = 0; k < n_samples; ++k)
    out.waveform.samples[k] = cd(best[k], best[n_samples + k]) / dt;
  return out;
}

}  // namespace qcoh
