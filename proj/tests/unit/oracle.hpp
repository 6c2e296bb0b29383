// Copyright 2026 The cvsteer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

#include "cvsteer/model.hpp"
#include "cvsteer/params.hpp"

namespace cvsteer::test {

/// Stationary covariance by Smith doubling on the exact one-step
/// propagator: V = sum_k Phi^k Q Phi^kT with Q from a Van Loan exponential.
inline Matrix smith_lyapunov(const Matrix &a, const Matrix &d) {
    const Eigen::Index n = a.rows();
    const double h = 0.5 / std::max(1.0, a.operatorNorm());
    Matrix block = Matrix::Zero(2 * n, 2 * n);
    block.topLeftCorner(n, n) = -a * h;
    block.topRightCorner(n, n) = d * h;
    block.bottomRightCorner(n, n) = a.transpose() * h;
    const Matrix f = block.exp();
    Matrix phi = f.bottomRightCorner(n, n).transpose();
    Matrix v = phi * f.topRightCorner(n, n);
    for (int k = 0; k < 200 && phi.norm() > 1e-300; ++k) {
        v += phi * v * phi.transpose();
        phi = (phi * phi).eval();
    }
    return 0.5 * (v + v.transpose());
}

inline double rel_diff(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double max_rel_diff(const Matrix &got, const Matrix &want) {
    return (got - want).cwiseAbs().maxCoeff() / std::max(want.cwiseAbs().maxCoeff(), 1e-300);
}

/// Stable case-1 parameters: kappa = gamma_m = gamma, n = n0.
inline SystemParams random_case1(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SystemParams p;
    const double gamma = 0.2 + 4.8 * unit(rng);
    p.kappa = gamma;
    p.gamma_m = gamma;
    p.gamma_a = 1e6;
    set_param(p, "C_a", 10.0 * gamma * unit(rng));
    const double bound = std::sqrt(gamma * (gamma + p.coop_a()));
    p.g_m = 0.98 * bound * unit(rng);
    p.n = 3.0 * unit(rng);
    p.n0 = p.n;
    return p;
}

/// Stable case-2 parameters: gamma_m = gamma_a = gamma, gamma_G > 0.
inline SystemParams random_case2(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SystemParams p;
    const double gamma = 0.2 + 4.8 * unit(rng);
    p.gamma_m = gamma;
    p.gamma_a = gamma;
    p.kappa = 1e6;
    set_param(p, "G_a", 20.0 * gamma * unit(rng));
    // G < gamma + G_a keeps gamma_G positive.
    set_param(p, "G", 0.98 * (gamma + p.big_g_a()) * unit(rng));
    p.n = 3.0 * unit(rng);
    p.n0 = p.n;
    return p;
}

} // namespace cvsteer::test
