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

#include "qcoh/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qcoh/levmar.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

constexpr double kSemFloor = 1e-12;

struct Series {
  std::vector<double> m, y, w;
};

template <typename Rec>
Series to_series(const std::vector<Rec>& records) {
  Series s;
  bool all_sem_ok = true;
  for (const auto& r : records) {
    s.m.push_back(static_cast<double>(r.m));
    s.y.push_back(r.mean);
    if (r.sem <= kSemFloor) all_sem_ok = false;
    s.w.push_back(r.sem);
  }
  // inverse-variance weights from per-m SEM when available, else uniform
  for (auto& w : s.w) w = all_sem_ok ? 1.0 / w : 1.0;
  return s;
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double logit(double f) { return std::log(f / (1.0 - f)); }

// Fits y = A + B f^(m - shift) with f = logistic(t).
DecayFit fit_decay(const Series& s, double shift, bool pb, const FitOptions& opt) {
  DecayFit out;
  out.model = pb ? "pb" : "rb";
  const int n = static_cast<int>(s.m.size());
  std::set<double> distinct(s.m.begin(), s.m.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("fit_decay: need at least 3 distinct sequence lengths");

  const double ymin = *std::min_element(s.y.begin(), s.y.end());
  const double ymax = *std::max_element(s.y.begin(), s.y.end());
  if (ymax - ymin < 1e-14) {
    out.degenerate = true;
    out.offset = opt.offset_mode == OffsetMode::Fixed ? opt.fixed_offset : 0.0;
    out.amplitude = s.y.front() - out.offset;
    out.rate_param = pb ? 1.0 : 0.0;
    out.epsilon_in = 0.0;
    return out;
  }

  const bool fixed = opt.offset_mode == OffsetMode::Fixed;

  // Offset guess from the largest-m bin, then log-linear regression for B, f.
  const size_t imax = std::distance(s.m.begin(), std::max_element(s.m.begin(), s.m.end()));
  double a0 = fixed ? opt.fixed_offset : s.y[imax];
  auto loglin = [&](double a) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int i = 0; i < n; ++i) {
      const double d = s.y[i] - a;
      if (d <= 1e-12) continue;
      const double x = s.m[i] - shift;
      sx += x;
      sy += std::log(d);
      sxx += x * x;
      sxy += x * std::log(d);
      ++cnt;
    }
    if (cnt < 2) return std::pair<double, double>(ymax - a, 0.99);
    const double slope = (cnt * sxy - sx * sy) / std::max(cnt * sxx - sx * sx, 1e-30);
    const double icpt = (sy - slope * sx) / cnt;
    return std::pair<double, double>(std::exp(icpt), std::clamp(std::exp(slope), 1e-4, 1.0 - 1e-9));
  };
  if (!fixed && a0 > ymax - 1e-12) a0 = ymin - 0.05 * (ymax - ymin);
  auto [b0, f0] = loglin(a0);

  auto model = [&](const Eigen::VectorXd& p) {
    const double a = fixed ? opt.fixed_offset : p[0];
    const double b = fixed ? p[0] : p[1];
    const double f = logistic(fixed ? p[1] : p[2]);
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i)
      r[i] = s.w[i] * (a + b * std::pow(f, s.m[i] - shift) - s.y[i]);
    return r;
  };

  Eigen::VectorXd x0(fixed ? 2 : 3);
  if (fixed) {
    x0 << b0, logit(f0);
  } else {
    x0 << a0, b0, logit(f0);
  }
  LevMarOptions lop;
  lop.max_iter = opt.max_iter;
  LevMarResult res = levmar(model, x0, lop);

  // Retry from a flat-offset start if the first basin was poor.
  if (!fixed) {
    Eigen::VectorXd alt(3);
    alt << 0.0, ymax, logit(0.98);
    LevMarResult res2 = levmar(model, alt, lop);
    if (res2.cost < res.cost) res = std::move(res2);
  }

  const double a = fixed ? opt.fixed_offset : res.x[0];
  const double b = fixed ? res.x[0] : res.x[1];
  const double t = fixed ? res.x[1] : res.x[2];
  const double f = logistic(t);

  out.converged = res.converged;
  out.offset = a;
  out.amplitude = b;
  out.rate_param = pb ? f : 0.5 * (1.0 - f);
  out.epsilon_in = pb ? 0.5 * (1.0 - std::sqrt(std::max(f, 0.0))) : 0.0;

  // Parameter covariance: (J^T J)^-1 scaled by the reduced chi-square, which
  // keeps the errors calibrated whether the weights were absolute or relative.
  const int npar = fixed ? 2 : 3;
  const Eigen::MatrixXd jtj = res.jacobian.transpose() * res.jacobian;
  const double dof = std::max(n - npar, 1);
  const double s2 = 2.0 * res.cost / dof;
  const Eigen::MatrixXd cov = jtj.ldlt().solve(Eigen::MatrixXd::Identity(npar, npar)) * s2;
  const double sig_t = std::sqrt(std::max(cov(npar - 1, npar - 1), 0.0));
  const double sig_f = f * (1.0 - f) * sig_t;
  out.sigma_rate = pb ? sig_f : 0.5 * sig_f;
  if (!fixed) {
    out.sigma_offset = std::sqrt(std::max(cov(0, 0), 0.0));
    out.sigma_amplitude = std::sqrt(std::max(cov(1, 1), 0.0));
  } else {
    out.sigma_amplitude = std::sqrt(std::max(cov(0, 0), 0.0));
  }
  out.ci95_rate_lo = out.rate_param - 1.96 * out.sigma_rate;
  out.ci95_rate_hi = out.rate_param + 1.96 * out.sigma_rate;

  // Unweighted residuals, ordered by m, for rms and the lag-1 autocorrelation
  // diagnostic (oscillating deviations from a single exponential).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return s.m[i] < s.m[j]; });
  std::vector<double> resid(n);
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    resid[i] = a + b * std::pow(f, s.m[order[i]] - shift) - s.y[order[i]];
    ss += resid[i] * resid[i];
  }
  out.residual_rms = std::sqrt(ss / n);
  if (ss > 0) {
    double num = 0;
    for (int i = 0; i + 1 < n; ++i) num += resid[i] * resid[i + 1];
    out.non_markovian_flag = std::abs(num / ss) > 2.0 / std::sqrt(static_cast<double>(n));
  }
  return out;
}

template <typename Rec>
BootstrapCi bootstrap_impl(const std::vector<Rec>& records, int n_resamples, uint64_t seed,
                           bool pb, const FitOptions& opt) {
  if (n_resamples < 100)
    throw std::invalid_argument("bootstrap_ci: need at least 100 resamples");
  std::vector<double> rates, offs, amps;
  rates.reserve(n_resamples);
  for (int r = 0; r < n_resamples; ++r) {
    std::vector<Rec> resampled = records;
    for (size_t li = 0; li < records.size(); ++li) {
      auto rng = make_rng(sub_seed(seed, static_cast<uint64_t>(r), records[li].m));
      const auto& src = records[li].values;
      auto& dst = resampled[li];
      const size_t cnt = src.size();
      double sum = 0;
      for (size_t k = 0; k < cnt; ++k) {
        dst.values[k] = src[rng() % cnt];
        sum += dst.values[k];
      }
      dst.mean = sum / cnt;
      double ssq = 0;
      for (double v : dst.values) ssq += (v - dst.mean) * (v - dst.mean);
      dst.sem = cnt > 1 ? std::sqrt(ssq / (cnt - 1) / cnt) : 0.0;
    }
    const Series s = to_series(resampled);
    const DecayFit f = fit_decay(s, pb ? 1.0 : 0.0, pb, opt);
    rates.push_back(f.rate_param);
    offs.push_back(f.offset);
    amps.push_back(f.amplitude);
  }
  auto pct = [](std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - lo) * (v[hi] - v[lo]);
  };
  BootstrapCi ci;
  ci.rate_lo = pct(rates, 0.025);
  ci.rate_hi = pct(rates, 0.975);
  ci.offset_lo = pct(offs, 0.025);
  ci.offset_hi = pct(offs, 0.975);
  ci.amplitude_lo = pct(amps, 0.025);
  ci.amplitude_hi = pct(amps, 0.975);
  return ci;
}

}  // namespace

DecayFit fit_rb(const std::vector<RbRecord>& records, const FitOptions& opt) {
  return fit_decay(to_series(records), 0.0, false, opt);
}

DecayFit fit_pb(const std::vector<PbRecord>& records, const FitOptions& opt) {
  return fit_decay(to_series(records), 1.0, true, opt);
}

BootstrapCi bootstrap_ci(const std::vector<RbRecord>& records, int n_resamples, uint64_t seed,
                         const FitOptions& opt) {
  return bootstrap_impl(records, n_resamples, seed, false, opt);
}

BootstrapCi bootstrap_ci(const std::vector<PbRecord>& records, int n_resamples, uint64_t seed,
                         const FitOptions& opt) {
  return bootstrap_impl(records, n_resamples, seed, true, opt);
}

}  // namespace qcoh
