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
#include "cvsteer/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvsteer/errors.hpp"

namespace cvsteer::analytic {

namespace {

bool same_rate(double x, double y) noexcept {
    return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
}

void require_case1(const SystemParams &p) {
    p.validate();
    if (!same_rate(p.kappa, p.gamma_m)) {
        throw UnsupportedError("case 1 closed forms need kappa == gamma_m");
    }
    const double gamma = p.kappa;
    const double c_a = p.coop_a();
    const double gap = gamma * (gamma + c_a) - p.g_m * p.g_m;
    if (gap <= 0.0) {
        // Largest eigenvalue of the (X_a, P_b) drift block.
        const double tr = -(2.0 * gamma + c_a);
        const double disc = c_a * c_a + 4.0 * p.g_m * p.g_m;
        const double max_re = 0.5 * (tr + std::sqrt(disc));
        std::ostringstream os;
        os << "case 1: unstable, g_m^2 >= gamma (gamma + C_a) (max real eigenvalue " << max_re
           << ")";
        throw StabilityError(os.str(), max_re);
    }
}

void require_case2(const SystemParams &p) {
    p.validate();
    if (!same_rate(p.gamma_m, p.gamma_a)) {
        throw UnsupportedError("case 2 closed forms need gamma_m == gamma_a");
    }
    const double gamma = p.gamma_m;
    const double gamma_g = p.gamma_g();
    if (gamma_g <= 0.0) {
        // Each 2x2 invariant block has trace -(gamma + gamma_G) and
        // determinant gamma * gamma_G.
        const double max_re = -std::min(gamma, gamma_g);
        std::ostringstream os;
        os << "case 2: unstable, gamma_G = " << gamma_g << " <= 0";
        throw StabilityError(os.str(), max_re);
    }
}

void require_equal_occupation(const SystemParams &p) {
    if (!same_rate(p.n, p.n0) && !(p.n == 0.0 && p.n0 == 0.0)) {
        throw UnsupportedError("closed-form steering parameters need n == n0; use the "
                               "covariance-based criteria for unequal occupations");
    }
}

} // namespace

bool case1_applicable(const SystemParams &p) noexcept {
    try {
        require_case1(p);
        return true;
    } catch (const Error &) {
        return false;
    }
}

bool case2_applicable(const SystemParams &p) noexcept {
    try {
        require_case2(p);
        return true;
    } catch (const Error &) {
        return false;
    }
}

Case1Moments case1_moments(const SystemParams &p) {
    require_case1(p);
    const double gamma = p.kappa;
    const double c_a = p.coop_a();
    const double g2 = p.g_m * p.g_m;
    const double occ = p.n + p.n0 + 1.0;
    const double denom = (gamma + 0.5 * c_a) * (gamma * (gamma + c_a) - g2);

    Case1Moments m;
    m.var_xa = (p.n + 0.5) + 0.5 * occ * gamma * g2 / denom;
    m.var_xb = (p.n0 + 0.5) + 0.5 * occ * (gamma + c_a) * g2 / denom;
    m.corr_xa_pb = -0.5 * occ * gamma * (gamma + c_a) * p.g_m / denom;
    return m;
}

Case2Moments case2_moments(const SystemParams &p) {
    require_case2(p);
    const double gamma = p.gamma_m;
    const double g = p.big_g();
    const double g_a = p.big_g_a();
    const double gamma_g = p.gamma_g();
    const double occ = p.n + p.n0 + 1.0;
    const double denom = gamma_g * (gamma + gamma_g);

    Case2Moments m;
    m.var_xb = (p.n0 + 0.5) + occ * 2.0 * g * (gamma_g + 0.5 * g) / denom;
    m.var_xc = (p.n + 0.5) + occ * g * g_a / denom;
    m.corr_xb_xc = -occ * std::sqrt(g * g_a) * (gamma_g + g) / denom;
    return m;
}

Case1Steering steering_case1(const SystemParams &p) {
    require_case1(p);
    require_equal_occupation(p);
    const double gamma = p.kappa;
    const double c_a = p.coop_a();
    const double g2 = p.g_m * p.g_m;
    const double base = p.n0 + 0.5;
    const double half = gamma + 0.5 * c_a;
    const double core = 2.0 * gamma * half * (gamma + c_a);

    const double denom_ba = half * (core - c_a * g2);
    if (denom_ba <= 0.0) {
        throw StabilityError("case 1: nonpositive denominator in E_b|a", denom_ba);
    }
    Case1Steering s;
    s.e_ab = base * (1.0 - gamma * c_a * g2 / (half * (core + c_a * g2)));
    s.e_ba = base * (1.0 + c_a * (gamma + c_a) * g2 / denom_ba);
    return s;
}

Case2Steering steering_case2(const SystemParams &p) {
    require_case2(p);
    require_equal_occupation(p);
    const double gamma = p.gamma_m;
    const double g = p.big_g();
    const double g_a = p.big_g_a();
    const double gamma_g = p.gamma_g();
    const double base = p.n0 + 0.5;
    const double sum = gamma + gamma_g;

    Case2Steering s;
    s.e_cb = base * (1.0 - 2.0 * g * g_a * (g_a - g) /
                               (sum * (gamma_g * sum + 4.0 * g * (gamma_g + 0.5 * g))));
    s.e_bc = base * (1.0 + 2.0 * g * (4.0 * gamma * gamma_g - g * (g_a - g)) /
                               (sum * (gamma_g * sum + 2.0 * g * g_a)));
    return s;
}

Case1Thresholds thresholds_case1(const SystemParams &p) {
    const Case1Moments m = case1_moments(p);
    // Variances of P_b and X_a coincide with those of X_b and P_a.
    const double var_pb = m.var_xb;
    Case1Thresholds t;
    t.corr = std::abs(m.corr_xa_pb);
    t.steer_threshold = std::sqrt(var_pb * std::max(0.0, m.var_xa - 0.5));
    t.ent_threshold = std::sqrt(std::max(0.0, var_pb - 0.5) * std::max(0.0, m.var_xa - 0.5));
    return t;
}

} // namespace cvsteer::analytic
