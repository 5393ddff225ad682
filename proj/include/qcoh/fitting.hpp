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

#ifndef QCOH_FITTING_HPP
#define QCOH_FITTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "qcoh/benchmarking.hpp"

namespace qcoh {

/// Fit of the decay models
///   RB:  <sigma_z> = A_z + B (1 - 2 eps)^m
///   PB:  <P>       = A' + B' u^(m-1)
/// The rate parameter is fitted through a logistic transform that keeps the
/// decay base in (0, 1), i.e. eps in (0, 1/2) and u in (0, 1).
struct DecayFit {
  std::string model;          // "rb" or "pb"
  double offset = 0;          // A_z or A'
  double amplitude = 1;       // B or B'
  double rate_param = 0;      // eps (RB) or u (PB)
  double epsilon_in = 0;      // PB only: (1 - sqrt(u)) / 2
  double sigma_offset = 0;
  double sigma_amplitude = 0;
  double sigma_rate = 0;      // standard error of eps / u
  double ci95_rate_lo = 0;
  double ci95_rate_hi = 0;
  double residual_rms = 0;
  bool converged = true;
  bool degenerate = false;       // constant input data
  bool non_markovian_flag = false;  // residual autocorrelation above threshold
};

enum class OffsetMode { Free, Fixed };

struct FitOptions {
  OffsetMode offset_mode = OffsetMode::Free;
  double fixed_offset = 0;  // used when offset_mode == Fixed (from spam_offsets)
  int max_iter = 300;
};

DecayFit fit_rb(const std::vector<RbRecord>& records, const FitOptions& opt = {});
DecayFit fit_pb(const std::vector<PbRecord>& records, const FitOptions& opt = {});

/// Percentile bootstrap CIs: sequences are resampled with replacement within
/// each length, the model refitted per resample. Resample streams are
/// counter-seeded so the result is independent of evaluation order.
struct BootstrapCi {
  double rate_lo = 0, rate_hi = 0;
  double offset_lo = 0, offset_hi = 0;
  double amplitude_lo = 0, amplitude_hi = 0;
};

BootstrapCi bootstrap_ci(const std::vector<RbRecord>& records, int n_resamples, uint64_t seed,
                         const FitOptions& opt = {});
BootstrapCi bootstrap_ci(const std::vector<PbRecord>& records, int n_resamples, uint64_t seed,
                         const FitOptions& opt = {});

}  // namespace qcoh

#endif
