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

#include "cvsteer/params.hpp"

// Closed-form steady-state moments and steering parameters for the two
// adiabatically reduced models. These are independent of the Lyapunov path
// and serve as its oracle.
//
// Case 1 (atoms eliminated) requires kappa == gamma_m =: gamma.
// Case 2 (cavity eliminated) requires gamma_m == gamma_a =: gamma.
// The steering closed forms additionally require n == n0.

namespace cvsteer::analytic {

struct Case1Moments {
    double var_xa = 0.0;    ///< also the variance of P_a
    double var_xb = 0.0;    ///< also the variance of P_b
    double corr_xa_pb = 0.0; ///< equals <X_b P_a>
};

struct Case2Moments {
    double var_xb = 0.0;
    double var_xc = 0.0;
    double corr_xb_xc = 0.0; ///< equals -<P_b P_c>
};

struct Case1Steering {
    double e_ab = 0.0; ///< a steered by b
    double e_ba = 0.0;
};

struct Case2Steering {
    double e_cb = 0.0; ///< c steered by b
    double e_bc = 0.0;
};

struct Case1Thresholds {
    double corr = 0.0;            ///< |<X_a P_b>|
    double steer_threshold = 0.0; ///< sqrt(var P_b (var X_a - 1/2))
    double ent_threshold = 0.0;   ///< sqrt((var P_b - 1/2)(var X_a - 1/2))
};

Case1Moments case1_moments(const SystemParams &params);
Case2Moments case2_moments(const SystemParams &params);
Case1Steering steering_case1(const SystemParams &params);
Case2Steering steering_case2(const SystemParams &params);
Case1Thresholds thresholds_case1(const SystemParams &params);

/// Checks used by the sweep layer to decide whether a closed form applies.
bool case1_applicable(const SystemParams &params) noexcept;
bool case2_applicable(const SystemParams &params) noexcept;

} // namespace cvsteer::analytic
