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

#include <vector>

#include "cvsteer/model.hpp"

namespace cvsteer {

/**
 * Symmetrized second moments V_ij = <O_i O_j + O_j O_i>/2 of zero-mean
 * quadrature fluctuations, in the (X_1, P_1, X_2, P_2, ...) ordering of
 * `modes()`. The vacuum has V = I/2.
 */
class CovarianceMatrix {
  public:
    /// Symmetrizes `values`; throws ValidationError on shape mismatch or an
    /// asymmetry above 1e-8 relative.
    CovarianceMatrix(std::vector<Mode> modes, Matrix values);

    [[nodiscard]] const std::vector<Mode> &modes() const noexcept { return modes_; }
    [[nodiscard]] const Matrix &values() const noexcept { return values_; }
    [[nodiscard]] std::size_t slot_of(Mode m) const;
    [[nodiscard]] bool has_mode(Mode m) const noexcept;

    [[nodiscard]] double var_x(Mode m) const;
    [[nodiscard]] double var_p(Mode m) const;
    /// <U_m W_k> with U, W in {X, P} selected by the flags.
    [[nodiscard]] double corr(Mode m, bool m_is_x, Mode k, bool k_is_x) const;

    /// 4x4 sub-matrix for the ordered pair (first, second).
    [[nodiscard]] CovarianceMatrix restrict_to(Mode first, Mode second) const;

    [[nodiscard]] Vector symplectic_eigenvalues() const;
    /// Every symplectic eigenvalue >= 1/2 - tol.
    [[nodiscard]] bool is_physical(double tol = 1e-9) const;

  private:
    std::vector<Mode> modes_;
    Matrix values_;
};

/// Standard symplectic form, block-diagonal with [[0, 1], [-1, 0]].
Matrix symplectic_form(std::size_t mode_count);

/// Moduli of the spectrum of i Omega V, one per mode, ascending.
Vector symplectic_eigenvalues(const Matrix &v);

/**
 * Solves A V + V A^T + D = 0 for the stationary covariance.
 *
 * The 2N x 2N equation is vectorized into (I kron A + A kron I) vec V =
 * -vec D and solved by full-pivot LU; at N <= 3 this is a 36-unknown
 * system. Throws StabilityError if the drift is unstable and
 * NumericalError if it is within 1e-8 of marginal or the solve does not
 * reach the 1e-10 relative residual.
 */
CovarianceMatrix steady_state(const LinearModel &model);

/// Frobenius norm of A V + V A^T + D.
double residual(const LinearModel &model, const CovarianceMatrix &v);
double residual(const LinearModel &model, const Matrix &v);

} // namespace cvsteer
