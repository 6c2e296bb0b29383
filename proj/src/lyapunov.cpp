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
#include "cvsteer/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvsteer/errors.hpp"

namespace cvsteer {

namespace {

constexpr double kMarginalThreshold = 1e-8;
constexpr double kResidualTolerance = 1e-10;

} // namespace

CovarianceMatrix::CovarianceMatrix(std::vector<Mode> modes, Matrix values)
    : modes_(std::move(modes)), values_(std::move(values)) {
    const auto dim = static_cast<Eigen::Index>(2 * modes_.size());
    if (values_.rows() != dim || values_.cols() != dim) {
        throw ValidationError("covariance", "shape does not match the mode count");
    }
    const double asym = (values_ - values_.transpose()).norm();
    if (asym > 1e-8 * std::max(1.0, values_.norm())) {
        throw ValidationError("covariance", "matrix is not symmetric");
    }
    values_ = 0.5 * (values_ + values_.transpose()).eval();
}

std::size_t CovarianceMatrix::slot_of(Mode m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end()) {
        throw ValidationError("mode", std::string("covariance has no mode '") + mode_char(m) + "'");
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

bool CovarianceMatrix::has_mode(Mode m) const noexcept {
    return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

double CovarianceMatrix::var_x(Mode m) const {
    const auto s = x_index(slot_of(m));
    return values_(s, s);
}

double CovarianceMatrix::var_p(Mode m) const {
    const auto s = p_index(slot_of(m));
    return values_(s, s);
}

double CovarianceMatrix::corr(Mode m, bool m_is_x, Mode k, bool k_is_x) const {
    const auto sm = slot_of(m);
    const auto sk = slot_of(k);
    return values_(m_is_x ? x_index(sm) : p_index(sm), k_is_x ? x_index(sk) : p_index(sk));
}

CovarianceMatrix CovarianceMatrix::restrict_to(Mode first, Mode second) const {
    if (first == second) {
        throw ValidationError("mode", "pair needs two distinct modes");
    }
    const std::size_t slots[2] = {slot_of(first), slot_of(second)};
    Matrix sub(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            sub(r, c) = values_(2 * slots[r / 2] + r % 2, 2 * slots[c / 2] + c % 2);
        }
    }
    return {{first, second}, std::move(sub)};
}

Vector CovarianceMatrix::symplectic_eigenvalues() const {
    return cvsteer::symplectic_eigenvalues(values_);
}

bool CovarianceMatrix::is_physical(double tol) const {
    return symplectic_eigenvalues().minCoeff() >= 0.5 - tol;
}

Matrix symplectic_form(std::size_t mode_count) {
    const auto dim = static_cast<Eigen::Index>(2 * mode_count);
    Matrix omega = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < mode_count; ++k) {
        omega(x_index(k), p_index(k)) = 1.0;
        omega(p_index(k), x_index(k)) = -1.0;
    }
    return omega;
}

Vector symplectic_eigenvalues(const Matrix &v) {
    if (v.rows() != v.cols() || v.rows() % 2 != 0) {
        throw ValidationError("covariance", "expected an even-dimensional square matrix");
    }
    const auto modes = static_cast<std::size_t>(v.rows() / 2);
    // Omega V has eigenvalues +-i nu_k; i Omega V has +-nu_k.
    Eigen::EigenSolver<Matrix> solver(symplectic_form(modes) * v, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symplectic eigenvalues: eigen decomposition failed");
    }
    std::vector<double> moduli;
    moduli.reserve(static_cast<std::size_t>(v.rows()));
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        moduli.push_back(std::abs(solver.eigenvalues()[k]));
    }
    std::sort(moduli.begin(), moduli.end());
    Vector nu(static_cast<Eigen::Index>(modes));
    for (std::size_t k = 0; k < modes; ++k) {
        nu[static_cast<Eigen::Index>(k)] = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
    }
    return nu;
}

double residual(const LinearModel &model, const Matrix &v) {
    const Matrix &a = model.drift();
    if (v.rows() != a.rows() || v.cols() != a.cols()) {
        throw ValidationError("covariance", "dimension does not match the model");
    }
    return (a * v + v * a.transpose() + model.diffusion()).norm();
}

double residual(const LinearModel &model, const CovarianceMatrix &v) {
    return residual(model, v.values());
}

CovarianceMatrix steady_state(const LinearModel &model) {
    if (model.time_dependent()) {
        throw UnsupportedError("steady_state: time-dependent drift has no stationary covariance");
    }
    const StabilityInfo info = stability(model);
    if (!info.stable) {
        std::ostringstream os;
        os << "steady_state: drift is not stable (max real eigenvalue " << info.max_real_eigenvalue
           << ")";
        throw StabilityError(os.str(), info.max_real_eigenvalue);
    }
    if (info.max_real_eigenvalue > -kMarginalThreshold) {
        std::ostringstream os;
        os << "steady_state: drift is marginally stable (max real eigenvalue "
           << info.max_real_eigenvalue << "), covariance diverges";
        throw NumericalError(os.str());
    }

    const Matrix &a = model.drift();
    const Eigen::Index n = a.rows();
    const Matrix eye = Matrix::Identity(n, n);
    // Column-major vec: vec(A V) = (I kron A) vec V, vec(V A^T) = (A kron I) vec V.
    Matrix op = Matrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            op.block(i * n, j * n, n, n) += eye(i, j) * a + a(i, j) * eye;
        }
    }
    const Vector rhs = -Eigen::Map<const Vector>(model.diffusion().data(), n * n);
    Eigen::FullPivLU<Matrix> lu(op);
    if (!lu.isInvertible()) {
        throw NumericalError("steady_state: Lyapunov operator is singular");
    }
    Vector sol = lu.solve(rhs);
    Matrix v = Eigen::Map<Matrix>(sol.data(), n, n);
    v = 0.5 * (v + v.transpose()).eval();

    const double res = residual(model, v);
    const double scale = a.norm() * v.norm() + model.diffusion().norm();
    if (!(res <= kResidualTolerance * std::max(scale, 1e-300))) {
        std::ostringstream os;
        os << "steady_state: residual " << res << " exceeds tolerance";
        throw NumericalError(os.str());
    }
    return {model.modes(), std::move(v)};
}

} // namespace cvsteer
