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

#ifndef QCOH_IO_HPP
#define QCOH_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "qcoh/benchmarking.hpp"
#include "qcoh/fitting.hpp"
#include "qcoh/lindblad.hpp"
#include "qcoh/ptm.hpp"
#include "qcoh/pulses.hpp"
#include "qcoh/waveform.hpp"

namespace qcoh {

// PTMs serialize as row-major 16-element arrays under key "ptm".
nlohmann::json ptm_to_json(const PauliTransferMatrix& e);
PauliTransferMatrix ptm_from_json(const nlohmann::json& j);

nlohmann::json sequences_to_json(const SequenceSet& s);
SequenceSet sequences_from_json(const nlohmann::json& j);

// CSV columns: m, seq_index, value, observable
std::string rb_records_to_csv(const std::vector<RbRecord>& records);
std::string pb_records_to_csv(const std::vector<PbRecord>& records);

nlohmann::json fit_to_json(const DecayFit& fit);

// CSV columns: time_ns, i_amp, q_amp (amplitudes in rad/s)
std::string waveform_to_csv(const Waveform& w);
Waveform waveform_from_csv(const std::string& text);

// CSV columns: point, weight
std::string distribution_to_csv(const ProbabilityDistribution& d);
ProbabilityDistribution distribution_from_csv(const std::string& text);

// CSV columns: freq_mhz, re, im
std::string transfer_to_csv(const TransferFunction& t);
TransferFunction transfer_from_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qcoh

#endif
