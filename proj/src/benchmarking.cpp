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

#include "qcoh/benchmarking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>

#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

void finalize(int m, std::vector<double> values, int& out_m, std::vector<double>& out_values,
              double& mean, double& sem) {
  out_m = m;
  double s = 0;
  for (double v : values) s += v;
  mean = s / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const auto n = static_cast<double>(values.size());
  sem = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  out_values = std::move(values);
}

// Binomial expectation estimate: the exact value v maps to success probability
// (1+v)/2; the estimate is 2k/n - 1 with k a sum of Bernoulli draws.
double shot_estimate(double v, int shots, std::mt19937_64& rng) {
  const double p = std::clamp(0.5 * (1.0 + v), 0.0, 1.0);
  int k = 0;
  for (int i = 0; i < shots; ++i)
    if (std::generate_canonical<double, 53>(rng) < p) ++k;
  return 2.0 * k / shots - 1.0;
}

template <typename PerSeq>
void run_over_sequences(const SequenceSet& seqs, int threads, PerSeq&& per_seq) {
  struct Task {
    int li;
    int si;
  };
  std::vector<Task> tasks;
  for (size_t li = 0; li < seqs.lengths.size(); ++li)
    for (size_t si = 0; si < seqs.sequences[li].size(); ++si)
      tasks.push_back({static_cast<int>(li), static_cast<int>(si)});

  if (threads <= 1) {
    for (const auto& t : tasks) per_seq(t.li, t.si);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
      per_seq(tasks[i].li, tasks[i].si);
  };
  std::vector<std::future<void>> pool;
  for (int t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
}

}  // namespace

SequenceSet gen_sequences(const std::vector<int>& lengths, int count, uint64_t seed) {
  if (lengths.empty()) throw std::invalid_argument("gen_sequences: lengths must be nonempty");
  if (count < 1) throw std::invalid_argument("gen_sequences: count must be >= 1");
  SequenceSet out;
  out.lengths = lengths;
  out.rng_seed = seed;
  out.sequences.resize(lengths.size());
  for (size_t li = 0; li < lengths.size(); ++li) {
    const int m = lengths[li];
    if (m < 0) throw std::invalid_argument("gen_sequences: negative length");
    out.sequences[li].resize(count);
    for (int si = 0; si < count; ++si) {
      auto rng = make_rng(sub_seed(seed, static_cast<uint64_t>(m), static_cast<uint64_t>(si)));
      auto& seq = out.sequences[li][si];
      seq.resize(m);
      for (int k = 0; k < m; ++k) seq[k] = static_cast<int>(rng() % 24);
    }
  }
  return out;
}

NoiseModel NoiseModel::ideal() { return uniform(PauliTransferMatrix::identity()); }

NoiseModel NoiseModel::uniform(const PauliTransferMatrix& e) {
  NoiseModel n;
  n.per_gate.fill(e);
  return n;
}

NoiseModel NoiseModel::from_primitives(const PauliTransferMatrix& noise_i,
                                       const PauliTransferMatrix& noise_x90,
                                       const PauliTransferMatrix& noise_y90,
                                       const PauliTransferMatrix& noise_y180) {
  NoiseModel n;
  for (const auto& e : clifford_group()) {
    // Noisy element: Z_ideal * (P pulse) * (S pulse); the group's noise
    // channel is extracted on the right, E(G) = noisy(G) * ideal(G)^-1.
    PauliTransferMatrix noisy = PauliTransferMatrix::identity();
    bool pulsed = false;
    if (e.s != SGate::I) {
      const auto& ns = e.s == SGate::X90 ? noise_x90 : noise_y90;
      noisy = compose(compose(ns, primitive_ptm(e.s)), noisy);
      pulsed = true;
    }
    if (e.p != PGate::I) {
      noisy = compose(compose(noise_y180, primitive_ptm(e.p)), noisy);
      pulsed = true;
    }
    if (!pulsed) noisy = compose(noise_i, noisy);
    noisy = compose(primitive_ptm(e.z), noisy);
    n.per_gate[e.index] = compose(noisy, e.ptm.inverse());
  }
  return n;
}

std::vector<RbRecord> simulate_rb(const NoiseModel& noise, const SequenceSet& seqs,
                                  const SimulateOptions& opt) {
  std::array<PauliTransferMatrix, 24> noisy;
  for (int k = 0; k < 24; ++k) noisy[k] = noise.noisy_gate(k);
  const SpamModel spam = opt.spam.value_or(SpamModel{});

  std::vector<RbRecord> out(seqs.lengths.size());
  std::vector<std::vector<double>> vals(seqs.lengths.size());
  for (size_t li = 0; li < seqs.lengths.size(); ++li)
    vals[li].resize(seqs.sequences[li].size());

  run_over_sequences(seqs, opt.threads, [&](int li, int si) {
    const auto& seq = seqs.sequences[li][si];
    Vec4 r = spam.state;
    int composite = 0;
    for (int idx : seq) {
      if (idx < 0 || idx >= 24) throw std::invalid_argument("simulate_rb: bad Clifford index");
      r = noisy[idx].apply(r);
      composite = cayley(idx, composite);
    }
    r = noisy[clifford_inverse(composite)].apply(r);
    double v = spam.measurement.dot(r);
    if (opt.shots > 0) {
      auto rng = make_rng(sub_seed(opt.shot_seed, seqs.lengths[li], si));
      v = shot_estimate(v, opt.shots, rng);
    }
    vals[li][si] = v;
  });

  for (size_t li = 0; li < seqs.lengths.size(); ++li)
    finalize(seqs.lengths[li], std::move(vals[li]), out[li].m, out[li].values, out[li].mean,
             out[li].sem);
  return out;
}

std::vector<PbRecord> simulate_pb(const NoiseModel& noise, const SequenceSet& seqs,
                                  const SimulateOptions& opt) {
  std::array<PauliTransferMatrix, 24> noisy;
  for (int k = 0; k < 24; ++k) noisy[k] = noise.noisy_gate(k);

  std::vector<PbRecord> out(seqs.lengths.size());
  std::vector<std::vector<double>> vals(seqs.lengths.size());
  for (size_t li = 0; li < seqs.lengths.size(); ++li)
    vals[li].resize(seqs.sequences[li].size());

  run_over_sequences(seqs, opt.threads, [&](int li, int si) {
    const auto& seq = seqs.sequences[li][si];
    Vec4 r(1, 0, 0, 1);
    for (int idx : seq) {
      if (idx < 0 || idx >= 24) throw std::invalid_argument("simulate_pb: bad Clifford index");
      r = noisy[idx].apply(r);
    }
    double p;
    if (opt.shots > 0) {
      auto rng = make_rng(sub_seed(opt.shot_seed, seqs.lengths[li], si));
      const double x = shot_estimate(r[1], opt.shots, rng);
      const double y = shot_estimate(r[2], opt.shots, rng);
      const double z = shot_estimate(r[3], opt.shots, rng);
      p = x * x + y * y + z * z;
    } else {
      p = r[1] * r[1] + r[2] * r[2] + r[3] * r[3];
    }
    vals[li][si] = p;
  });

  for (size_t li = 0; li < seqs.lengths.size(); ++li)
    finalize(seqs.lengths[li], std::move(vals[li]), out[li].m, out[li].values, out[li].mean,
             out[li].sem);
  return out;
}

SpamOffsets spam_offsets(const NoiseModel& noise, const Vec4& state) {
  Vec4 acc = Vec4::Zero();
  for (const auto& e : clifford_group())
    acc += noise.per_gate[e.index].apply(e.ptm.apply(state));
  acc /= 24.0;
  SpamOffsets out;
  out.a_x = acc[1];
  out.a_y = acc[2];
  out.a_z = acc[3];
  out.a_prime = out.a_x * out.a_x + out.a_y * out.a_y + out.a_z * out.a_z;
  return out;
}

}  // namespace qcoh
