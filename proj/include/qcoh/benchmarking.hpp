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

#ifndef QCOH_BENCHMARKING_HPP
#define QCOH_BENCHMARKING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcoh/clifford.hpp"
#include "qcoh/ptm.hpp"

namespace qcoh {

/// Random Clifford sequences for RB/PB. Regeneration from (seed, lengths,
/// count) is bit-identical; each (length, sequence) pair draws from its own
/// counter-derived stream, so generation order and threading do not matter.
struct SequenceSet {
  std::vector<int> lengths;
  // sequences[i][j] = j-th sequence of length lengths[i]
  std::vector<std::vector<std::vector<int>>> sequences;
  uint64_t rng_seed = 0;
};

SequenceSet gen_sequences(const std::vector<int>& lengths, int count, uint64_t seed);

/// Per-Clifford noise channels E(G). The noisy gate applied by the simulators
/// is E(G) o G (ideal gate first, then its noise), which is the convention
/// under which the SPAM offsets of `spam_offsets` are the fit constants.
struct NoiseModel {
  std::array<PauliTransferMatrix, 24> per_gate;

  static NoiseModel ideal();
  /// Gate-independent noise: the same channel for all 24 elements.
  static NoiseModel uniform(const PauliTransferMatrix& e);
  /// Lifts per-primitive noise to the group: each Clifford's noise is the
  /// composite of its S- and P-slot pulse noises (virtual Z is noiseless;
  /// identity slots carry no pulse; pure-virtual-Z elements use one I pulse).
  /// noise_for maps a primitive name in {I, X90, Y90, Y180} to its channel.
  static NoiseModel from_primitives(const PauliTransferMatrix& noise_i,
                                    const PauliTransferMatrix& noise_x90,
                                    const PauliTransferMatrix& noise_y90,
                                    const PauliTransferMatrix& noise_y180);

  PauliTransferMatrix noisy_gate(int index) const {
    return compose(per_gate[index], clifford_group()[index].ptm);
  }
};

struct SpamModel {
  Vec4 state = Vec4(1, 0, 0, 1);          // PTM vector of the prepared state
  Vec4 measurement = Vec4(0, 0, 0, 1);    // covector of the measured observable
};

struct RbRecord {
  int m = 0;
  std::vector<double> values;  // per-sequence <sigma_z>
  double mean = 0;
  double sem = 0;
};

struct PbRecord {
  int m = 0;
  std::vector<double> values;  // per-sequence purity <sx>^2+<sy>^2+<sz>^2
  double mean = 0;
  double sem = 0;
};

struct SimulateOptions {
  std::optional<SpamModel> spam;  // RB only; default (0,0,1) state, sigma_z readout
  /// 0 = exact expectation values. Otherwise each expectation is replaced by a
  /// binomial estimate at this many shots (seeded from the sequence stream).
  int shots = 0;
  uint64_t shot_seed = 0;
  int threads = 1;
};

/// RB: applies the noisy sequence and the noisy recovery gate, returns
/// <sigma_z> per sequence and per-length aggregates.
std::vector<RbRecord> simulate_rb(const NoiseModel& noise, const SequenceSet& seqs,
                                  const SimulateOptions& opt = {});

/// PB: no recovery gate; purity from the exact final Bloch vector (or from
/// three per-axis shot estimates when shots > 0).
std::vector<PbRecord> simulate_pb(const NoiseModel& noise, const SequenceSet& seqs,
                                  const SimulateOptions& opt = {});

/// SPAM offsets of the decay models: A_M = (1/24) sum_G <M| E_G G |rho> for
/// M in {sx, sy, sz}, and A' = sum_M A_M^2. For gate-independent noise this
/// is Tr[M E(1/2 I)] by the 1-design property.
struct SpamOffsets {
  double a_x = 0;
  double a_y = 0;
  double a_z = 0;
  double a_prime = 0;
};

SpamOffsets spam_offsets(const NoiseModel& noise, const Vec4& state = Vec4(1, 0, 0, 1));

}  // namespace qcoh

#endif
