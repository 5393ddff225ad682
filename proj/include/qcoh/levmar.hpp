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

#ifndef QCOH_LEVMAR_HPP
#define QCOH_LEVMAR_HPP

#include <Eigen/Dense>
#include <functional>

namespace qcoh {

/// Damped least squares (Levenberg-Marquardt) with a forward-difference
/// Jacobian. Minimizes |r(x)|^2 over x.
struct LevMarResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
  double cost = 0;  // 0.5 * |r|^2
  int iterations = 0;
  bool converged = false;
};

struct LevMarOptions {
  int max_iter = 200;
  double xtol = 1e-12;
  double ftol = 1e-14;
  double fd_step = 1e-7;
  double lambda0 = 1e-3;
};

inline LevMarResult levmar(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                           Eigen::VectorXd x0, const LevMarOptions& opt = {}) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  const int n = static_cast<int>(x0.size());
  VectorXd r = f(x0);
  double cost = 0.5 * r.squaredNorm();
  double lambda = opt.lambda0;

  auto jac = [&](const VectorXd& x, const VectorXd& rx) {
    MatrixXd j(rx.size(), n);
    for (int k = 0; k < n; ++k) {
      const double h = opt.fd_step * std::max(1.0, std::abs(x[k]));
      VectorXd xp = x;
      xp[k] += h;
      j.col(k) = (f(xp) - rx) / h;
    }
    return j;
  };

  LevMarResult out;
  MatrixXd j = jac(x0, r);
  for (int it = 0; it < opt.max_iter; ++it) {
    out.iterations = it + 1;
    const MatrixXd jtj = j.transpose() * j;
    const VectorXd g = j.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 40; ++tries) {
      MatrixXd a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const VectorXd dx = a.ldlt().solve(-g);
      const VectorXd xn = x0 + dx;
      const VectorXd rn = f(xn);
      const double cn = 0.5 * rn.squaredNorm();
      if (cn < cost) {
        const double df = cost - cn;
        const double dxn = dx.norm();
        x0 = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-14);
        stepped = true;
        if (dxn < opt.xtol * (1.0 + x0.norm()) || df < opt.ftol * (1.0 + cost))
          out.converged = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!stepped) {
      out.converged = true;  // no descent direction left at any damping
      break;
    }
    if (out.converged) break;
    j = jac(x0, r);
  }
  out.x = x0;
  out.residual = r;
  out.jacobian = jac(x0, r);
  out.cost = cost;
  return out;
}

}  // namespace qcoh

#endif
