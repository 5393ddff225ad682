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

#ifndef QCOH_LINDBLAD_HPP
#define QCOH_LINDBLAD_HPP

#include <complex>
#include <limits>
#include <vector>

#include "qcoh/choi.hpp"
#include "qcoh/ptm.hpp"
#include "qcoh/waveform.hpp"

namespace qcoh {

/// Discrete quadrature over a 1-d distribution: points and nonnegative
/// weights summing to 1. Continuous shapes are discretized on a truncated
/// uniform grid with exact CDF cell masses (renormalized), which keeps the
/// far-tail aliasing of oscillatory ensemble averages under control.
struct ProbabilityDistribution {
  enum class Kind { Delta, Lorentzian, Gaussian, Mixture, Tabulated };

  Kind kind = Kind::Delta;
  std::vector<double> points{0.0};
  std::vector<double> weights{1.0};

  static ProbabilityDistribution delta(double x0);
  /// Lorentzian of half-width-at-half-maximum hwhm (rad/s for detunings),
  /// truncated at span_hwhm half-widths. FID of this shape decays as
  /// exp(-hwhm * t), i.e. T2* = 1/hwhm.
  static ProbabilityDistribution lorentzian(double center, double hwhm, int n = 201,
                                            double span_hwhm = 40.0);
  static ProbabilityDistribution gaussian(double center, double sigma, int n = 101,
                                          double span_sigma = 8.0);
  static ProbabilityDistribution mixture(
      const std::vector<std::pair<ProbabilityDistribution, double>>& components);
  static ProbabilityDistribution tabulated(std::vector<double> pts, std::vector<double> wts);

  void validate() const;
};

struct LindbladParams {
  double t1 = std::numeric_limits<double>::infinity();  // seconds
  double t2 = std::numeric_limits<double>::infinity();  // seconds; t2 <= 2 t1
  ProbabilityDistribution larmor;  // detuning Delta (rad/s)
  ProbabilityDistribution b1;      // dimensionless drive-amplitude scale
  double dt = 1e-9;                // integrator step (s)

  void validate() const;
};

struct DensityMatrix {
  Mat2c rho = (Mat2c() << 1, 0, 0, 0).finished();

  static DensityMatrix from_bloch(const Vec3& b);
  Vec3 bloch() const;
  /// Hermitian to 1e-12, unit trace to 1e-12, eigenvalues >= -1e-10.
  bool is_physical(double tol = 1e-10) const;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec3> bloch;  // <sx>, <sy>, <sz> at each time

  DensityMatrix state(size_t k) const { return DensityMatrix::from_bloch(bloch[k]); }
};

/// Integrates drho/dt = -i[H(t), rho] + (1/T1) D[s-] rho + (1/(2 t_phi)) D[sz] rho
/// with 1/t_phi = 1/T2 - 1/(2 T1) and
/// H(t) = -(delta/2) sz + b1_scale (I(t) sx + Q(t) sy)/2 from the waveform.
/// Classical 4th-order fixed-step integration of the equivalent Bloch form;
/// the drive is piecewise constant per waveform sample and params.dt must not
/// exceed the sample period (each sample is subdivided into whole steps).
Trajectory evolve(const DensityMatrix& rho0, const Waveform& wf, const LindbladParams& params,
                  double delta, double b1_scale = 1.0);

/// Weighted average of evolve() over the tensor grid larmor x b1.
Trajectory ensemble_average(const DensityMatrix& rho0, const Waveform& wf,
                            const LindbladParams& params);

/// Effective channel of the pulse: the ensemble-averaged fundamental matrix of
/// the Bloch-form master equation, which is exactly the PTM of the evolution.
/// The first row is forced to (1,0,0,0). Throws if the result is grossly
/// non-CP (negative Choi weight > 0.05), which signals an integrator or
/// quadrature failure.
PauliTransferMatrix gate_ptm_from_pulse(const Waveform& wf, const LindbladParams& params);

/// Resonantly driven qubit with constant drive Omega e^{i psi} at detuning
/// Delta: closed-form trajectory from sigma_z-up, expressed in the frame
/// rotating at the qubit frequency (drive frame rotated back by the detuning
/// phase). omega1 = sqrt(Delta^2 + Omega^2), sin(theta) = Omega/omega1,
/// cos(theta) = -Delta/omega1.
struct RabiModel {
  double delta = 0;   // rad/s
  double omega = 0;   // rad/s
  double psi = 0;     // rad
  double t0 = 0;      // pulse start (s)

  double omega1() const { return std::hypot(delta, omega); }
};

Trajectory rabi_trajectory(const RabiModel& model, const std::vector<double>& times);

}  // namespace qcoh

#endif
