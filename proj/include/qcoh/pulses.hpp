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

#ifndef QCOH_PULSES_HPP
#define QCOH_PULSES_HPP

#include <complex>
#include <vector>

#include "qcoh/lindblad.hpp"
#include "qcoh/ptm.hpp"
#include "qcoh/waveform.hpp"

namespace qcoh {

/// Tabulated complex frequency response T(f). Waveform distortion is the
/// point-wise product W' = T . W on the waveform's FFT grid, with T
/// interpolated linearly between tabulated points. The tabulation must cover
/// the grid (symmetric span up to Nyquist).
struct TransferFunction {
  std::vector<double> freqs_hz;  // strictly increasing
  std::vector<std::complex<double>> response;
  double epsilon_reg = -1.0;  // < 0: default 0.05 * max |T| at predistortion time

  std::complex<double> at(double f_hz) const;  // linear interpolation
  void validate() const;

  /// Flat response T = c over [-f_max, f_max].
  static TransferFunction flat(std::complex<double> c, double f_max_hz);
  /// One-pole low-pass 1 / (1 + i f / f_c), tabulated over [-f_max, f_max].
  static TransferFunction one_pole(double f_cut_hz, double f_max_hz, int n = 2001);
  /// Applies a time-origin phase adjustment: T(f) -> T(f) exp(-i 2 pi f slope).
  TransferFunction with_phase_slope(double slope_s) const;
};

/// W' = IFFT(T . FFT(W)); the waveform is zero-padded x4 before the transform
/// to suppress circular-convolution wrap, and the padding is removed after.
Waveform distort(const Waveform& w, const TransferFunction& t);

/// Regularized inverse filter: applies conj(T) / (|T|^2 + eps^2) pointwise,
/// with eps = t.epsilon_reg (default 0.05 max |T|).
Waveform predistort(const Waveform& w, const TransferFunction& t);

/// One point of the transfer function from measured Rabi oscillations at a
/// known detuning: least-squares fit of (Omega, psi) to the closed-form
/// trajectory, returning Omega e^{i psi} / (Omega0 e^{i psi0}).
struct TransferPointFit {
  std::complex<double> t = 1.0;
  double omega = 0;
  double psi = 0;
  bool converged = true;
  bool low_confidence = false;  // |Omega / Delta| below the sensitivity threshold
};

TransferPointFit fit_transfer_point(const std::vector<double>& times,
                                    const std::vector<double>& sx,
                                    const std::vector<double>& sy, double delta,
                                    std::complex<double> nominal,
                                    double sensitivity_threshold = 0.1);

/// Gradient-ascent pulse design: maximizes the distribution-weighted average
/// gate fidelity of the dissipation-free propagator against a target unitary
/// (robustness enters only through the Larmor/B1 weights). Piecewise-constant
/// controls, exact propagator gradients, fixed step size.
struct DesignedPulse {
  Waveform waveform;
  double fidelity = 0;  // achieved weighted average gate fidelity
  int iterations = 0;
  bool reached_target = false;
};

struct DesignOptions {
  int max_iter = 500;
  double step = 5e-3;        // gradient step in units of (rad/s)^2 scaled internally
  double target_fidelity = 0.9999;
  uint64_t seed = 1;         // randomized initial waveform
};

DesignedPulse design_pulse(const PauliTransferMatrix& target, double duration, int n_samples,
                           const ProbabilityDistribution& larmor,
                           const ProbabilityDistribution& b1, const DesignOptions& opt = {});

}  // namespace qcoh

#endif
