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

#include "qcoh/runner.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <sstream>

#include "qcoh/choi.hpp"
#include "qcoh/gst.hpp"
#include "qcoh/io.hpp"

namespace qcoh {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw SchemaError(where + ": unknown key '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
}

PauliTransferMatrix channel_from_json(const json& j) {
  require_keys(j, {"family", "params"}, {"family", "params"}, "channel");
  return make_channel(channel_family_from_name(j.at("family").get<std::string>()),
                      j.at("params").get<std::vector<double>>());
}

NoiseModel noise_from_json(const json& j) {
  if (j.contains("gateset_condition"))
    return clifford_from_gateset(paper_gateset(j.at("gateset_condition").get<std::string>()))
        .noise;
  return NoiseModel::uniform(channel_from_json(j));
}

struct Outputs {
  fs::path dir;
  json manifest;
  std::ostringstream summary;

  explicit Outputs(const std::string& out_dir) : dir(out_dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);
    manifest["outputs"] = json::array();
  }

  void write(const std::string& name, const std::string& body) {
    write_text_file((dir / name).string(), body);
    manifest["outputs"].push_back(name);
  }

  void finish(const json& config) {
    manifest["schema_version"] = 1;
    manifest["mode"] = config.at("mode");
    manifest["seed"] = config.at("seed");
    manifest["config_hash"] = config_hash(config);
    manifest["tool"] = "qcoh 1.0";
    write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    write_text_file((dir / "summary.txt").string(), summary.str());
  }
};

// ---- modes -------------------------------------------------------------------

void mode_channel_metrics(const json& p, Outputs& out) {
  require_keys(p, {"channel", "sigma_epsilon_in"}, {"channel"}, "channel-metrics");
  const PauliTransferMatrix e = channel_from_json(p.at("channel"));
  if (!is_cptp(e)) throw NumericalError("channel-metrics: channel is not CPTP");
  const ChannelMetrics m = channel_metrics(e);
  const double sig = p.value("sigma_epsilon_in", 0.0);
  const DiamondInterval di = diamond_bounds(m.epsilon_in, sig);
  json j{{"epsilon", m.epsilon},
         {"fidelity", m.fidelity},
         {"unitarity", m.u},
         {"epsilon_in", m.epsilon_in},
         {"epsilon_coh", m.epsilon_coh},
         {"diamond", {{"lower", di.lower},
                      {"upper", di.upper},
                      {"midpoint", di.midpoint()},
                      {"half_width", di.half_width()}}}};
  out.write("metrics.json", j.dump(2) + "\n");
  out.summary << "channel metrics: eps=" << m.epsilon << " u=" << m.u
              << " eps_in=" << m.epsilon_in << " eps_coh=" << m.epsilon_coh
              << " eps_diamond=[" << di.lower << ", " << di.upper << "]\n";
}

void mode_rb_pb(const json& config, const json& p, Outputs& out, bool pb, int threads) {
  require_keys(p, {"noise", "lengths", "count", "offset_mode", "shots"},
               {"noise", "lengths", "count"}, pb ? "pb" : "rb");
  const NoiseModel noise = noise_from_json(p.at("noise"));
  const auto lengths = p.at("lengths").get<std::vector<int>>();
  const int count = p.at("count").get<int>();
  const uint64_t seed = config.at("seed").get<uint64_t>();
  const SequenceSet seqs = gen_sequences(lengths, count, seed);

  SimulateOptions so;
  so.shots = p.value("shots", 0);
  so.shot_seed = seed + 1;
  so.threads = threads;

  FitOptions fo;
  if (p.value("offset_mode", "free") == std::string("fixed")) {
    fo.offset_mode = OffsetMode::Fixed;
    const SpamOffsets offs = spam_offsets(noise);
    fo.fixed_offset = pb ? offs.a_prime : offs.a_z;
  }

  DecayFit fit;
  if (pb) {
    const auto recs = simulate_pb(noise, seqs, so);
    fit = fit_pb(recs, fo);
    out.write("results.csv", pb_records_to_csv(recs));
  } else {
    const auto recs = simulate_rb(noise, seqs, so);
    fit = fit_rb(recs, fo);
    out.write("results.csv", rb_records_to_csv(recs));
  }
  if (!fit.converged) throw NumericalError("decay fit did not converge");
  out.write("fit.json", fit_to_json(fit).dump(2) + "\n");
  out.write("sequences.json", sequences_to_json(seqs).dump() + "\n");
  if (pb)
    out.summary << "pb: u=" << fit.rate_param << " eps_in=" << fit.epsilon_in << " +- "
                << fit.sigma_rate / (4.0 * std::sqrt(std::max(fit.rate_param, 1e-300))) << "\n";
  else
    out.summary << "rb: eps=" << fit.rate_param << " +- " << fit.sigma_rate << "\n";
}

LindbladParams lindblad_from_json(const json& j) {
  require_keys(j,
               {"t1_us", "t2_us", "t2star_ns", "larmor_points", "b1_sigma", "b1_points",
                "dt_ns"},
               {"t1_us", "t2_us"}, "lindblad");
  LindbladParams lp;
  lp.t1 = j.at("t1_us").get<double>() * 1e-6;
  lp.t2 = j.at("t2_us").get<double>() * 1e-6;
  if (j.contains("t2star_ns"))
    lp.larmor = ProbabilityDistribution::lorentzian(
        0.0, 1.0 / (j.at("t2star_ns").get<double>() * 1e-9), j.value("larmor_points", 101));
  const double b1_sigma = j.value("b1_sigma", 0.0);
  lp.b1 = b1_sigma > 0
              ? ProbabilityDistribution::gaussian(1.0, b1_sigma, j.value("b1_points", 21))
              : ProbabilityDistribution::delta(1.0);
  lp.dt = j.value("dt_ns", 1.0) * 1e-9;
  return lp;
}

GateSet gateset_from_pulses(const json& p, const LindbladParams& lp) {
  const double dur = p.value("pulse_duration_ns", 150.0) * 1e-9;
  const double dt = p.value("pulse_sample_ns", 1.0) * 1e-9;
  auto square = [&](double angle, double phase) {
    return Waveform::square(angle / dur, phase, dur, dt);
  };
  GateSet gs;
  gs.gates[kX90] = gate_ptm_from_pulse(square(kPi / 2, 0), lp);
  gs.gates[kY90] = gate_ptm_from_pulse(square(kPi / 2, kPi / 2), lp);
  gs.gates[kX180] = gate_ptm_from_pulse(square(kPi, 0), lp);
  gs.gates[kY180] = gate_ptm_from_pulse(square(kPi, kPi / 2), lp);
  gs.gates[kIdle] = gate_ptm_from_pulse(Waveform::zeros(
                                            static_cast<size_t>(std::llround(dur / dt)), dt),
                                        lp);
  return gs;
}

void mode_rb_pb_lindblad(const json& config, const json& p, Outputs& out, bool pb,
                         int threads) {
  require_keys(p,
               {"lindblad", "lengths", "count", "pulse_duration_ns", "pulse_sample_ns",
                "offset_mode"},
               {"lindblad", "lengths", "count"}, pb ? "pb-lindblad" : "rb-lindblad");
  const LindbladParams lp = lindblad_from_json(p.at("lindblad"));
  const GateSet gs = gateset_from_pulses(p, lp);
  const CliffordNoise cn = clifford_from_gateset(gs);

  json gsj = json::array();
  for (int g = 0; g < 5; ++g) gsj.push_back(ptm_to_json(gs.gates[g]));
  out.write("gateset.json", gsj.dump(2) + "\n");

  const auto lengths = p.at("lengths").get<std::vector<int>>();
  const int count = p.at("count").get<int>();
  const uint64_t seed = config.at("seed").get<uint64_t>();
  const SequenceSet seqs = gen_sequences(lengths, count, seed);
  SimulateOptions so;
  so.threads = threads;
  DecayFit fit;
  if (pb) {
    const auto recs = simulate_pb(cn.noise, seqs, so);
    fit = fit_pb(recs);
    out.write("results.csv", pb_records_to_csv(recs));
  } else {
    const auto recs = simulate_rb(cn.noise, seqs, so);
    fit = fit_rb(recs);
    out.write("results.csv", rb_records_to_csv(recs));
  }
  out.write("fit.json", fit_to_json(fit).dump(2) + "\n");
  out.summary << (pb ? "pb" : "rb") << "-lindblad: rate=" << fit.rate_param
              << " clifford_eps(direct)=" << cn.metrics.clifford_epsilon << "\n";
}

void mode_gst_gen(const json& config, const json& p, Outputs& out) {
  require_keys(p, {"gateset_condition", "noise_sigma"}, {}, "gst-gen");
  const GateSet gs = p.contains("gateset_condition")
                         ? paper_gateset(p.at("gateset_condition").get<std::string>())
                         : GateSet::ideal();
  const GstDataset d =
      gen_gst_data(gs, p.value("noise_sigma", 0.0), config.at("seed").get<uint64_t>());
  std::ostringstream csv;
  csv << "k,l,m,n,value\n";
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 5; ++l)
      for (int m = 0; m < 5; ++m)
        for (int n = 0; n < 5; ++n)
          csv << (k == 0 ? 'x' : 'y') << ',' << l + 1 << ',' << m + 1 << ',' << n + 1 << ','
              << d.at(k, l, m, n) << '\n';
  out.write("gst_dataset.csv", csv.str());
  out.summary << "gst-gen: 250 entries written\n";
}

void mode_gst_fit(const json& config, const json& p, Outputs& out) {
  require_keys(p, {"replay_condition", "data_csv", "max_iter", "simulate_rb_pb", "lengths",
                   "count"},
               {}, "gst-fit");
  GstDataset data;
  GateSet init = GateSet::ideal();
  if (p.contains("replay_condition")) {
    data = gen_gst_data(paper_gateset(p.at("replay_condition").get<std::string>()));
  } else if (p.contains("data_csv")) {
    const std::string text = read_text_file(p.at("data_csv").get<std::string>());
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() != 5) throw IoError("gst dataset csv: bad row");
      const int k = cells[0] == "x" ? 0 : 1;
      data.at(k, std::stoi(cells[1]) - 1, std::stoi(cells[2]) - 1, std::stoi(cells[3]) - 1) =
          std::stod(cells[4]);
    }
  } else {
    throw SchemaError("gst-fit: need replay_condition or data_csv");
  }

  const GstFitResult res = fit_gst(data, init, p.value("max_iter", 400));
  if (!res.converged) throw NumericalError("gst-fit: optimizer did not converge");
  json gsj = json::array();
  for (int g = 0; g < 5; ++g) gsj.push_back(ptm_to_json(res.gates.gates[g]));
  out.write("gateset.json", gsj.dump(2) + "\n");

  const CliffordNoise cn = clifford_from_gateset(res.gates);
  json metrics{{"residual", res.residual},
               {"clifford_epsilon", cn.metrics.clifford_epsilon},
               {"clifford_epsilon_in", cn.metrics.clifford_epsilon_in},
               {"avg_unitarity", cn.metrics.avg_unitarity},
               {"unitarity_of_avg", cn.metrics.unitarity_of_avg}};
  for (int g = 0; g < 5; ++g)
    metrics["fidelity"][kPrimitiveNames[g]] = cn.metrics.gate_fidelity[g];

  if (p.value("simulate_rb_pb", false)) {
    const auto lengths = p.value("lengths", std::vector<int>{1, 2, 3, 4, 5, 6, 7, 9, 11, 16,
                                                             19, 23, 28, 30, 33, 36, 39, 40,
                                                             44, 45, 48, 49, 53, 55});
    const int count = p.value("count", 150);
    const uint64_t seed = config.at("seed").get<uint64_t>();
    const SequenceSet seqs = gen_sequences(lengths, count, seed);
    const DecayFit rb = fit_rb(simulate_rb(cn.noise, seqs));
    const DecayFit pbf = fit_pb(simulate_pb(cn.noise, seqs));
    metrics["rb_sim"] = {{"epsilon", rb.rate_param}, {"sigma", rb.sigma_rate}};
    metrics["pb_sim"] = {{"epsilon_in", pbf.epsilon_in}, {"unitarity", pbf.rate_param}};
  }
  out.write("metrics.json", metrics.dump(2) + "\n");
  out.summary << "gst-fit: residual=" << res.residual
              << " clifford_eps=" << cn.metrics.clifford_epsilon
              << " eps_in=" << cn.metrics.clifford_epsilon_in << "\n";
}

void mode_transfer_fit(const json& config, const json& p, Outputs& out) {
  require_keys(p,
               {"omega_mhz", "psi", "deltas_mhz", "trace_ns", "sample_ns", "transfer_csv"},
               {"omega_mhz", "deltas_mhz", "trace_ns"}, "transfer-fit");
  const double omega0 = 2 * kPi * p.at("omega_mhz").get<double>() * 1e6;
  const double psi0 = p.value("psi", 0.0);
  const double trace = p.at("trace_ns").get<double>() * 1e-9;
  const double samp = p.value("sample_ns", 2.0) * 1e-9;
  TransferFunction truth = TransferFunction::flat(1.0, 1e9);
  if (p.contains("transfer_csv"))
    truth = transfer_from_csv(read_text_file(p.at("transfer_csv").get<std::string>()));

  std::vector<double> times;
  for (double t = 0; t < trace; t += samp) times.push_back(t);

  std::ostringstream csv;
  csv << "freq_mhz,re,im\n";
  for (double fmhz : p.at("deltas_mhz").get<std::vector<double>>()) {
    const double delta = 2 * kPi * fmhz * 1e6;
    // actual drive seen by the spins: nominal scaled by the true transfer fn
    const std::complex<double> actual =
        std::polar(omega0, psi0) * truth.at(fmhz * 1e6);
    RabiModel m;
    m.delta = delta;
    m.omega = std::abs(actual);
    m.psi = std::arg(actual);
    const Trajectory traj = rabi_trajectory(m, times);
    std::vector<double> sx(times.size()), sy(times.size());
    for (size_t i = 0; i < times.size(); ++i) {
      sx[i] = traj.bloch[i][0];
      sy[i] = traj.bloch[i][1];
    }
    const TransferPointFit f =
        fit_transfer_point(times, sx, sy, delta, std::polar(omega0, psi0));
    csv << fmhz << ',' << f.t.real() << ',' << f.t.imag() << '\n';
  }
  out.write("transfer_fit.csv", csv.str());
  out.summary << "transfer-fit: " << p.at("deltas_mhz").size() << " points\n";
  (void)config;
}

void mode_distort(const json& p, Outputs& out, bool inverse) {
  require_keys(p, {"waveform_csv", "transfer_csv", "epsilon_reg"},
               {"waveform_csv", "transfer_csv"}, "distort");
  const Waveform w = waveform_from_csv(read_text_file(p.at("waveform_csv").get<std::string>()));
  TransferFunction t =
      transfer_from_csv(read_text_file(p.at("transfer_csv").get<std::string>()));
  if (p.contains("epsilon_reg")) t.epsilon_reg = p.at("epsilon_reg").get<double>();
  const Waveform o = inverse ? predistort(w, t) : distort(w, t);
  out.write("waveform_out.csv", waveform_to_csv(o));
  out.summary << (inverse ? "predistort" : "distort") << ": " << o.samples.size()
              << " samples\n";
}

void mode_design_pulse(const json& config, const json& p, Outputs& out) {
  require_keys(p,
               {"target", "duration_ns", "n_samples", "larmor_hwhm_mhz", "larmor_points",
                "max_iter", "step"},
               {"target", "duration_ns", "n_samples"}, "design-pulse");
  const std::string name = p.at("target").get<std::string>();
  PauliTransferMatrix target;
  if (name == "X90")
    target = primitive_ptm(SGate::X90);
  else if (name == "Y90")
    target = primitive_ptm(SGate::Y90);
  else if (name == "X180")
    target = unitary_rotation(Vec3::UnitX(), kPi);
  else if (name == "Y180")
    target = primitive_ptm(PGate::Y180);
  else if (name == "I")
    target = PauliTransferMatrix::identity();
  else
    throw SchemaError("design-pulse: unknown target " + name);

  const double hwhm_mhz = p.value("larmor_hwhm_mhz", 0.0);
  const ProbabilityDistribution larmor =
      hwhm_mhz > 0 ? ProbabilityDistribution::lorentzian(0.0, 2 * kPi * hwhm_mhz * 1e6,
                                                         p.value("larmor_points", 21), 10.0)
                   : ProbabilityDistribution::delta(0.0);
  DesignOptions opt;
  opt.max_iter = p.value("max_iter", 500);
  if (p.contains("step")) opt.step = p.at("step").get<double>();
  opt.seed = config.at("seed").get<uint64_t>();
  const DesignedPulse dp =
      design_pulse(target, p.at("duration_ns").get<double>() * 1e-9,
                   p.at("n_samples").get<int>(), larmor, ProbabilityDistribution::delta(1.0),
                   opt);
  out.write("waveform_out.csv", waveform_to_csv(dp.waveform));
  json rep{{"fidelity", dp.fidelity},
           {"iterations", dp.iterations},
           {"reached_target", dp.reached_target}};
  out.write("design.json", rep.dump(2) + "\n");
  out.summary << "design-pulse " << name << ": fidelity=" << dp.fidelity << "\n";
}

void mode_table1(const json& p, Outputs& out) {
  require_keys(p, {"rows"}, {"rows"}, "table1");
  std::ostringstream csv;
  csv << "label,epsilon,sigma_epsilon,epsilon_in,sigma_epsilon_in,epsilon_coh,"
         "sigma_epsilon_coh,diamond_mid,diamond_half\n";
  for (const auto& row : p.at("rows")) {
    require_keys(row, {"label", "epsilon", "sigma_epsilon", "epsilon_in", "sigma_epsilon_in"},
                 {"epsilon", "epsilon_in"}, "table1 row");
    const Table1Row r = table1_row(row.value("label", ""), row.at("epsilon").get<double>(),
                                   row.value("sigma_epsilon", 0.0),
                                   row.at("epsilon_in").get<double>(),
                                   row.value("sigma_epsilon_in", 0.0));
    csv << r.label << ',' << r.epsilon << ',' << r.sigma_epsilon << ',' << r.epsilon_in << ','
        << r.sigma_epsilon_in << ',' << r.epsilon_coh << ',' << r.sigma_epsilon_coh << ','
        << r.diamond_mid << ',' << r.diamond_half << '\n';
    out.summary << r.label << ": eps_coh=" << r.epsilon_coh << "(" << r.sigma_epsilon_coh
                << ") eps_diamond=" << r.diamond_mid << "(" << r.diamond_half << ")\n";
  }
  out.write("table1.csv", csv.str());
}

}  // namespace

Table1Row table1_row(const std::string& label, double epsilon, double sigma_epsilon,
                     double epsilon_in, double sigma_epsilon_in) {
  Table1Row r;
  r.label = label;
  r.epsilon = epsilon;
  r.sigma_epsilon = sigma_epsilon;
  r.epsilon_in = epsilon_in;
  r.sigma_epsilon_in = sigma_epsilon_in;
  r.epsilon_coh = epsilon - epsilon_in;
  r.sigma_epsilon_coh = sigma_epsilon + sigma_epsilon_in;
  const DiamondInterval di = diamond_bounds(epsilon_in, sigma_epsilon_in);
  r.diamond_mid = di.midpoint();
  r.diamond_half = di.half_width();
  return r;
}

uint64_t config_hash(const nlohmann::json& config) {
  const std::string dump = config.dump();
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string run_experiment(nlohmann::json config, const std::string& out_dir) {
  require_keys(config, {"schema_version", "mode", "seed", "out_dir", "threads", "params"},
               {"schema_version", "mode", "seed"}, "config");
  if (config.at("schema_version").get<int>() != 1)
    throw SchemaError("config: unsupported schema_version");
  const std::string mode = config.at("mode").get<std::string>();
  const json params = config.value("params", json::object());
  const int threads = config.value("threads", 1);

  Outputs out(out_dir);
  try {
    if (mode == "channel-metrics")
      mode_channel_metrics(params, out);
    else if (mode == "rb")
      mode_rb_pb(config, params, out, false, threads);
    else if (mode == "pb")
      mode_rb_pb(config, params, out, true, threads);
    else if (mode == "rb-lindblad")
      mode_rb_pb_lindblad(config, params, out, false, threads);
    else if (mode == "pb-lindblad")
      mode_rb_pb_lindblad(config, params, out, true, threads);
    else if (mode == "gst-gen")
      mode_gst_gen(config, params, out);
    else if (mode == "gst-fit")
      mode_gst_fit(config, params, out);
    else if (mode == "transfer-fit")
      mode_transfer_fit(config, params, out);
    else if (mode == "distort")
      mode_distort(params, out, false);
    else if (mode == "predistort")
      mode_distort(params, out, true);
    else if (mode == "design-pulse")
      mode_design_pulse(config, params, out);
    else if (mode == "table1")
      mode_table1(params, out);
    else
      throw SchemaError("config: unknown mode '" + mode + "'");
  } catch (const SchemaError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  } catch (const std::exception& e) {
    throw NumericalError(e.what());
  }
  out.finish(config);
  return out.summary.str();
}

}  // namespace qcoh
