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

#include "qcoh/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcoh {

namespace {

std::vector<std::vector<double>> parse_csv(const std::string& text, size_t columns,
                                           const std::string& what) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.back() == '\r') {
      if (!line.empty()) line.pop_back();
      if (line.empty()) continue;
    }
    if (first) {  // header
      first = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != columns)
      throw std::runtime_error(what + ": expected " + std::to_string(columns) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json ptm_to_json(const PauliTransferMatrix& e) {
  std::vector<double> flat(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) flat[4 * r + c] = e.m(r, c);
  return nlohmann::json{{"ptm", flat}};
}

PauliTransferMatrix ptm_from_json(const nlohmann::json& j) {
  const auto flat = j.at("ptm").get<std::vector<double>>();
  if (flat.size() != 16) throw std::runtime_error("ptm: expected 16 entries");
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = flat[4 * r + c];
  return PauliTransferMatrix(m);
}

nlohmann::json sequences_to_json(const SequenceSet& s) {
  return nlohmann::json{
      {"seed", s.rng_seed}, {"lengths", s.lengths}, {"sequences", s.sequences}};
}

SequenceSet sequences_from_json(const nlohmann::json& j) {
  SequenceSet s;
  s.rng_seed = j.at("seed").get<uint64_t>();
  s.lengths = j.at("lengths").get<std::vector<int>>();
  s.sequences = j.at("sequences").get<std::vector<std::vector<std::vector<int>>>>();
  return s;
}

namespace {

template <typename Rec>
std::string records_to_csv(const std::vector<Rec>& records, const char* observable) {
  std::ostringstream out;
  out << "m,seq_index,value,observable\n";
  for (const auto& r : records)
    for (size_t i = 0; i < r.values.size(); ++i)
      out << r.m << ',' << i << ',' << fmt(r.values[i]) << ',' << observable << '\n';
  return out.str();
}

}  // namespace

std::string rb_records_to_csv(const std::vector<RbRecord>& records) {
  return records_to_csv(records, "sz");
}

std::string pb_records_to_csv(const std::vector<PbRecord>& records) {
  return records_to_csv(records, "purity");
}

nlohmann::json fit_to_json(const DecayFit& fit) {
  nlohmann::json j{
      {"model", fit.model},
      {"offset", fit.offset},
      {"amplitude", fit.amplitude},
      {"rate_param", fit.rate_param},
      {"sigma_offset", fit.sigma_offset},
      {"sigma_amplitude", fit.sigma_amplitude},
      {"sigma_rate", fit.sigma_rate},
      {"ci95_rate", {fit.ci95_rate_lo, fit.ci95_rate_hi}},
      {"residual_rms", fit.residual_rms},
      {"flags",
       {{"converged", fit.converged},
        {"degenerate", fit.degenerate},
        {"non_markovian", fit.non_markovian_flag}}},
  };
  if (fit.model == "pb") j["epsilon_in"] = fit.epsilon_in;
  if (fit.model == "rb") j["epsilon"] = fit.rate_param;
  if (fit.model == "pb") j["unitarity"] = fit.rate_param;
  return j;
}

std::string waveform_to_csv(const Waveform& w) {
  std::ostringstream out;
  out << "time_ns,i_amp,q_amp\n";
  for (size_t k = 0; k < w.samples.size(); ++k)
    out << fmt(1e9 * w.dt * static_cast<double>(k)) << ',' << fmt(w.samples[k].real()) << ','
        << fmt(w.samples[k].imag()) << '\n';
  return out.str();
}

Waveform waveform_from_csv(const std::string& text) {
  const auto rows = parse_csv(text, 3, "waveform csv");
  if (rows.size() < 1) throw std::runtime_error("waveform csv: no samples");
  Waveform w;
  w.dt = rows.size() > 1 ? (rows[1][0] - rows[0][0]) * 1e-9 : 1e-9;
  for (const auto& r : rows) w.samples.emplace_back(r[1], r[2]);
  w.validate();
  return w;
}

std::string distribution_to_csv(const ProbabilityDistribution& d) {
  std::ostringstream out;
  out << "point,weight\n";
  for (size_t i = 0; i < d.points.size(); ++i)
    out << fmt(d.points[i]) << ',' << fmt(d.weights[i]) << '\n';
  return out.str();
}

ProbabilityDistribution distribution_from_csv(const std::string& text) {
  const auto rows = parse_csv(text, 2, "distribution csv");
  std::vector<double> pts, wts;
  for (const auto& r : rows) {
    pts.push_back(r[0]);
    wts.push_back(r[1]);
  }
  return ProbabilityDistribution::tabulated(std::move(pts), std::move(wts));
}

std::string transfer_to_csv(const TransferFunction& t) {
  std::ostringstream out;
  out << "freq_mhz,re,im\n";
  for (size_t i = 0; i < t.freqs_hz.size(); ++i)
    out << fmt(t.freqs_hz[i] * 1e-6) << ',' << fmt(t.response[i].real()) << ','
        << fmt(t.response[i].imag()) << '\n';
  return out.str();
}

TransferFunction transfer_from_csv(const std::string& text) {
  const auto rows = parse_csv(text, 3, "transfer csv");
  TransferFunction t;
  for (const auto& r : rows) {
    t.freqs_hz.push_back(r[0] * 1e6);
    t.response.emplace_back(r[1], r[2]);
  }
  t.validate();
  return t;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace qcoh
