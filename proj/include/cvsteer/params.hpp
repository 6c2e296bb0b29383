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

#include <optional>
#include <string>

namespace cvsteer {

/**
 * Rates, couplings and bath occupations of the three-mode system.
 *
 * Mode a is the cavity, b the mechanical mirror and c the collective atomic
 * mode. All rates are in units of a common reference rate. The cavity-mirror
 * coupling `g_m` is the linearized (drive-enhanced) coupling and is taken as
 * a direct input.
 */
struct SystemParams {
    double kappa = 1.0;   ///< cavity damping
    double gamma_m = 1.0; ///< mirror damping
    double gamma_a = 1.0; ///< atomic damping
    double g_m = 0.0;     ///< cavity-mirror parametric coupling
    double g_a = 0.0;     ///< atom-cavity beam-splitter coupling
    double n = 0.0;       ///< thermal occupation of the cavity and atomic baths
    double n0 = 0.0;      ///< thermal occupation of the mirror bath
    std::optional<double> omega_m; ///< mechanical frequency, non-RWA model only

    /// Throws ValidationError naming the first offending field.
    void validate() const;

    /// C_a = g_a^2 / gamma_a, the atomic-mode cooperativity rate.
    [[nodiscard]] double coop_a() const noexcept { return g_a * g_a / gamma_a; }
    /// G = g_m^2 / kappa.
    [[nodiscard]] double big_g() const noexcept { return g_m * g_m / kappa; }
    /// G_a = g_a^2 / kappa.
    [[nodiscard]] double big_g_a() const noexcept { return g_a * g_a / kappa; }
    /// gamma_G = gamma - (G - G_a) with gamma taken as gamma_m.
    [[nodiscard]] double gamma_g() const noexcept { return gamma_m - (big_g() - big_g_a()); }

    bool operator==(const SystemParams &) const = default;
};

/// Named access to the fields and derived rates (C_a, G, G_a) of
/// SystemParams. Setting a derived rate adjusts the underlying coupling:
/// C_a sets g_a through gamma_a, G sets g_m and G_a sets g_a through kappa.
double get_param(const SystemParams &params, const std::string &name);
void set_param(SystemParams &params, const std::string &name, double value);
bool is_param_name(const std::string &name);
/// True if the named quantity carries units of rate.
bool is_rate_param(const std::string &name);

} // namespace cvsteer
