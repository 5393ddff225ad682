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

#ifndef QCOH_GST_HPP
#define QCOH_GST_HPP

#include <array>
#include <string>

#include "qcoh/benchmarking.hpp"
#include "qcoh/ptm.hpp"

namespace qcoh {

/// Primitive pulse order used throughout the GST tables.
enum Primitive : int { kX90 = 0, kY90 = 1, kX180 = 2, kY180 = 3, kIdle = 4 };

constexpr std::array<const char*, 5> kPrimitiveNames = {"X90", "Y90", "X180", "Y180", "I"};

struct GateSet {
  std::array<PauliTransferMatrix, 5> gates;  // {X90, Y90, X180, Y180, I}

  static GateSet ideal();
  bool all_cptp(double tol = 1e-6) const;
};

/// The 2 x 5 x 5 x 5 = 250 expectation values m_{k,lmn} = <<M_k| Q_l Q_m Q_n |rho>>
/// (Q_n applied first), k in {x, y}, with the state and measurements fixed to
/// their nominal values.
struct GstDataset {
  std::array<double, 250> values{};
  Vec4 rho = Vec4(1, 0, 0, 1);
  Vec4 meas_x = Vec4(0, 1, 0, 0);
  Vec4 meas_y = Vec4(0, 0, 1, 0);

  static constexpr int index(int k, int l, int m, int n) { return ((k * 5 + l) * 5 + m) * 5 + n; }
  double& at(int k, int l, int m, int n) { return values[index(k, l, m, n)]; }
  double at(int k, int l, int m, int n) const { return values[index(k, l, m, n)]; }
};

/// Synthetic dataset from a gate set, with optional Gaussian readout noise of
/// scale noise_sigma (deterministic in seed).
GstDataset gen_gst_data(const GateSet& gs, double noise_sigma = 0.0, uint64_t seed = 0);

/// CPTP-constrained least-squares reconstruction of the five gates. Each gate
/// is parameterized by a Stinespring isometry (Choi square root), kept on the
/// isometry manifold by Loewdin orthonormalization after every step, and the
/// squared data misfit is minimized by damped least squares. rho and M_k stay
/// fixed at their nominal values, so SPAM errors are absorbed into the gates.
struct GstFitResult {
  GateSet gates;
  double residual = 0;  // sum of squared errors over the 250 entries
  int iterations = 0;
  bool converged = true;
};

GstFitResult fit_gst(const GstDataset& data, const GateSet& init, int max_iter = 400,
                     double tol = 1e-14);

/// Parametric bootstrap over readout noise: refits datasets regenerated with
/// Gaussian noise and returns the 2.5/97.5 percentiles of the per-gate
/// fidelities, in primitive order.
struct GstBootstrap {
  std::array<double, 5> fidelity_lo{};
  std::array<double, 5> fidelity_hi{};
};

GstBootstrap gst_bootstrap(const GateSet& fitted, double noise_sigma, int n_resamples,
                           uint64_t seed, int max_iter = 200);

/// (1/24) sum_G u[E(G)].
double avg_unitarity(const std::array<PauliTransferMatrix, 24>& noise);
/// u[(1/24) sum_G E(G)].
double unitarity_of_avg(const std::array<PauliTransferMatrix, 24>& noise);

struct GstMetrics {
  std::array<double, 5> gate_fidelity{};  // primitive order
  double avg_unitarity = 1;               // average of unitarities
  double unitarity_of_avg = 1;            // unitarity of the average noise
  double clifford_epsilon = 0;            // mean BEPG over the 24 noisy Cliffords
  double clifford_epsilon_in = 0;         // (1 - sqrt(avg unitarity)) / 2
};

/// Assembles the 24 noisy Cliffords from the primitive pulses (virtual Z is
/// noiseless; identity slots carry no pulse; pure-virtual-Z elements use one
/// I pulse), extracts E(G) = noisy(G) * ideal(G)^-1, and aggregates metrics.
struct CliffordNoise {
  NoiseModel noise;
  GstMetrics metrics;
};

CliffordNoise clifford_from_gateset(const GateSet& gs);

/// Reconstructed gate sets published with the paper's supplement. Conditions:
/// "tmeas_sel", "tmeas_nosel", "flat_nosel" (flat = uncorrected transfer
/// function). Loaded from data/paper_gst_ptms.json.
GateSet paper_gateset(const std::string& condition);

}  // namespace qcoh

#endif
