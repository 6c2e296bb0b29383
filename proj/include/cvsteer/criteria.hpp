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

#include <string_view>

#include "cvsteer/lyapunov.hpp"

namespace cvsteer {

/// Reid steering bound and Duan-Simon separability bound (vacuum variance
/// 1/2 convention). lambda is compared against kSteeringThreshold as well.
inline constexpr double kSteeringThreshold = 0.5;
inline constexpr double kDuanSimonThreshold = 1.0;
/// Absolute margin below a threshold required to certify steering or
/// entanglement.
inline constexpr double kCriterionTolerance = 1e-12;

enum class Quadrature { x, p };

enum class SteeringClass { none, one_way_i_by_j, one_way_j_by_i, two_way };

std::string_view to_string(SteeringClass c) noexcept;
std::string_view to_string(Quadrature q) noexcept;

/// Optimal inference of X_i from h * O_j and of P_i from h' * O'_j.
struct InferenceGains {
    Quadrature paired_with_x = Quadrature::x; ///< O_j
    double h = 0.0;
    double h_prime = 0.0;
};

struct DirectionalSteering {
    double value = 0.0; ///< E_{i|j}
    InferenceGains gains;
};

struct SteeringReport {
    Mode i = Mode::a;
    Mode j = Mode::b;
    double e_ij = 0.0; ///< i steered by j
    double e_ji = 0.0; ///< j steered by i
    InferenceGains gains_ij;
    InferenceGains gains_ji;
    SteeringClass classification = SteeringClass::none;
};

enum class CombinationType {
    xp,   ///< (X_i + h P_j, P_i + h X_j)
    xxpp, ///< (X_i + h X_j, P_i - h P_j)
};

std::string_view to_string(CombinationType c) noexcept;

struct DuanSimonResult {
    double value = 0.0; ///< Delta^h at the optimal gain
    double h_opt = 0.0;
    CombinationType combination = CombinationType::xp;
    [[nodiscard]] bool entangled() const noexcept { return value < kDuanSimonThreshold - kCriterionTolerance; }
};

struct LogNegativityResult {
    double sigma = 0.0;
    double lambda = 0.0;
    double log_negativity = 0.0;
    [[nodiscard]] bool entangled() const noexcept;
};

struct EntanglementReport {
    double duan_simon = 0.0;
    double h_opt = 0.0;
    CombinationType combination = CombinationType::xp;
    double lambda = 0.0;
    double log_negativity = 0.0;
};

/**
 * Reid inference-variance product E_{i|j} for mode i steered by mode j.
 *
 * O_j is whichever of X_j, P_j has the larger |correlation coefficient|
 * with X_i (ties go to X_j); O'_j is the other quadrature and is used to
 * infer P_i. Throws ValidationError if a variance is not positive.
 */
DirectionalSteering reid_parameter(const CovarianceMatrix &v, Mode i, Mode j);

/// Both directions of the Reid criterion plus the regime classification.
SteeringReport reid_steering(const CovarianceMatrix &v, Mode i, Mode j);

/// Asymmetric Duan-Simon parameter minimized over h.
DuanSimonResult duan_simon(const CovarianceMatrix &v, Mode i, Mode j);

/// Delta^h at an arbitrary gain for the given combination type.
double duan_simon_at(const CovarianceMatrix &v, Mode i, Mode j, CombinationType type, double h);

/// Smallest partial-transpose symplectic eigenvalue of the (i, j) block and
/// E_N = max(0, -ln(2 lambda)).
LogNegativityResult log_negativity(const CovarianceMatrix &v, Mode i, Mode j);

EntanglementReport entanglement(const CovarianceMatrix &v, Mode i, Mode j);

/// E < 1/2 - kCriterionTolerance certifies steering; equality is not steering.
SteeringClass classify_steering(double e_ij, double e_ji) noexcept;

} // namespace cvsteer
