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
#include "cvsteer/params.hpp"

#include <cmath>

#include "cvsteer/errors.hpp"

namespace cvsteer {

namespace {

void require(bool ok, const char *field, const char *what) {
    if (!ok) {
        throw ValidationError(field, what);
    }
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

void SystemParams::validate() const {
    require(finite(kappa) && kappa > 0.0, "kappa", "must be finite and > 0");
    require(finite(gamma_m) && gamma_m > 0.0, "gamma_m", "must be finite and > 0");
    require(finite(gamma_a) && gamma_a > 0.0, "gamma_a", "must be finite and > 0");
    require(finite(g_m) && g_m >= 0.0, "g_m", "must be finite and >= 0");
    require(finite(g_a) && g_a >= 0.0, "g_a", "must be finite and >= 0");
    require(finite(n) && n >= 0.0, "n", "must be finite and >= 0");
    require(finite(n0) && n0 >= 0.0, "n0", "must be finite and >= 0");
    if (omega_m) {
        require(finite(*omega_m) && *omega_m > 0.0, "omega_m", "must be finite and > 0");
    }
}

bool is_param_name(const std::string &name) {
    return name == "kappa" || name == "gamma_m" || name == "gamma_a" || name == "g_m" ||
           name == "g_a" || name == "n" || name == "n0" || name == "omega_m" ||
           name == "C_a" || name == "G" || name == "G_a";
}

bool is_rate_param(const std::string &name) {
    return is_param_name(name) && name != "n" && name != "n0";
}

double get_param(const SystemParams &params, const std::string &name) {
    if (name == "kappa") return params.kappa;
    if (name == "gamma_m") return params.gamma_m;
    if (name == "gamma_a") return params.gamma_a;
    if (name == "g_m") return params.g_m;
    if (name == "g_a") return params.g_a;
    if (name == "n") return params.n;
    if (name == "n0") return params.n0;
    if (name == "omega_m") {
        if (!params.omega_m) {
            throw ValidationError("omega_m", "not set");
        }
        return *params.omega_m;
    }
    if (name == "C_a") return params.coop_a();
    if (name == "G") return params.big_g();
    if (name == "G_a") return params.big_g_a();
    throw ValidationError(name, "unknown parameter");
}

void set_param(SystemParams &params, const std::string &name, double value) {
    if (name == "kappa") {
        params.kappa = value;
    } else if (name == "gamma_m") {
        params.gamma_m = value;
    } else if (name == "gamma_a") {
        params.gamma_a = value;
    } else if (name == "g_m") {
        params.g_m = value;
    } else if (name == "g_a") {
        params.g_a = value;
    } else if (name == "n") {
        params.n = value;
    } else if (name == "n0") {
        params.n0 = value;
    } else if (name == "omega_m") {
        params.omega_m = value;
    } else if (name == "C_a" || name == "G" || name == "G_a") {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw ValidationError(name, "must be finite and >= 0");
        }
        if (name == "C_a") {
            params.g_a = std::sqrt(value * params.gamma_a);
        } else if (name == "G") {
            params.g_m = std::sqrt(value * params.kappa);
        } else {
            params.g_a = std::sqrt(value * params.kappa);
        }
    } else {
        throw ValidationError(name, "unknown parameter");
    }
}

} // namespace cvsteer
