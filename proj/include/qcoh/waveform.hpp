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

#ifndef QCOH_WAVEFORM_HPP
#define QCOH_WAVEFORM_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace qcoh {

/// Complex control envelope I + iQ in rad/s, piecewise constant at sample
/// period dt. phase_offset is the virtual-Z bookkeeping phase: the drive seen
/// by the spin is samples[k] * exp(i * phase_offset).
struct Waveform {
  std::vector<std::complex<double>> samples;
  double dt = 1e-9;
  double phase_offset = 0.0;

  double duration() const { return dt * static_cast<double>(samples.size()); }

  std::complex<double> drive(size_t k) const {
    return samples[k] * std::polar(1.0, phase_offset);
  }

  void validate() const {
    if (samples.empty()) throw std::invalid_argument("waveform: empty");
    if (dt <= 0) throw std::invalid_argument("waveform: dt must be > 0");
  }

  static Waveform square(double amplitude_rad_s, double phase, double duration, double dt) {
    Waveform w;
    w.dt = dt;
    const auto n = static_cast<size_t>(std::llround(duration / dt));
    w.samples.assign(n, std::polar(amplitude_rad_s, phase));
    return w;
  }

  static Waveform zeros(size_t n, double dt) {
    Waveform w;
    w.dt = dt;
    w.samples.assign(n, 0.0);
    return w;
  }
};

}  // namespace qcoh

#endif
