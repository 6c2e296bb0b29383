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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cvsteer/params.hpp"

namespace cvsteer {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Mode { a, b, c };

char mode_char(Mode m) noexcept;
/// Parses 'a', 'b' or 'c'.
Mode parse_mode(char c);

/// Quadratures are ordered (X_1, P_1, X_2, P_2, ...) in every matrix.
inline std::size_t x_index(std::size_t slot) noexcept { return 2 * slot; }
inline std::size_t p_index(std::size_t slot) noexcept { return 2 * slot + 1; }

/// Drift modulation at angular frequency `frequency`:
/// A(t) = drift + cos(frequency t) * cos_part + sin(frequency t) * sin_part.
struct PeriodicDrift {
    Matrix cos_part;
    Matrix sin_part;
    double frequency = 0.0;
};

/**
 * Linear Langevin model dx = A(t) x dt + B dW with B B^T = D.
 *
 * Immutable after construction. The constructor checks shapes and the
 * symmetry of the diffusion matrix.
 */
class LinearModel {
  public:
    LinearModel(std::vector<Mode> modes, Matrix drift, Matrix diffusion,
                std::optional<PeriodicDrift> periodic = std::nullopt);

    [[nodiscard]] const std::vector<Mode> &modes() const noexcept { return modes_; }
    [[nodiscard]] std::size_t mode_count() const noexcept { return modes_.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return 2 * modes_.size(); }
    [[nodiscard]] const Matrix &drift() const noexcept { return drift_; }
    [[nodiscard]] const Matrix &diffusion() const noexcept { return diffusion_; }
    [[nodiscard]] const std::optional<PeriodicDrift> &periodic() const noexcept { return periodic_; }
    [[nodiscard]] bool time_dependent() const noexcept { return periodic_.has_value(); }

    /// Slot of `m` in the mode ordering; throws ValidationError if absent.
    [[nodiscard]] std::size_t slot_of(Mode m) const;
    [[nodiscard]] bool has_mode(Mode m) const noexcept;

    /// Total drift at time t (the static drift for time-independent models).
    [[nodiscard]] Matrix drift_at(double t) const;

  private:
    std::vector<Mode> modes_;
    Matrix drift_;
    Matrix diffusion_;
    std::optional<PeriodicDrift> periodic_;
};

enum class ModelKind { full_rwa, reduced_a, reduced_b, full_nonrwa };

std::string_view to_string(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view name);

/// Cavity, mirror and atomic modes in the rotating-wave approximation,
/// ordering (a, b, c).
LinearModel build_full_rwa(const SystemParams &params);

/// Cavity and mirror with the atomic mode adiabatically eliminated,
/// ordering (a, b).
LinearModel build_reduced_a(const SystemParams &params);

/// Mirror and atoms with the cavity adiabatically eliminated, ordering
/// (b, c). Both effective noises come from the same cavity input, which
/// shows up as an X-X / P-P cross block in the diffusion.
LinearModel build_reduced_b(const SystemParams &params);

/// The rotating-wave model plus the counter-rotating a-b terms at 2 omega_m.
LinearModel build_full_nonrwa(const SystemParams &params);

LinearModel build_model(ModelKind kind, const SystemParams &params);

struct StabilityInfo {
    bool stable = false;
    double max_real_eigenvalue = 0.0;
    [[nodiscard]] double margin() const noexcept { return -max_real_eigenvalue; }
};

/// Eigenvalue test on the static drift. Eigenvalues within 1e-12 * ||A||
/// of the imaginary axis count as marginal, i.e. not stable.
/// Throws UnsupportedError for time-dependent models.
StabilityInfo stability(const LinearModel &model);

/// Human-readable warning if the fast mode of a reduced model is not at
/// least 10x faster than every other rate; empty otherwise.
std::string adiabatic_regime_warning(ModelKind kind, const SystemParams &params);

} // namespace cvsteer
