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
#include "cvsteer/report.hpp"

#include <string>

#include "cvsteer/errors.hpp"

namespace cvsteer {

namespace {

std::string pair_name(Mode i, Mode j) { return {mode_char(i), mode_char(j)}; }

Json mode_list(const std::vector<Mode> &modes) {
    Json out = Json::array();
    for (Mode m : modes) {
        out.push_back(std::string(1, mode_char(m)));
    }
    return out;
}

Json gains_json(const InferenceGains &g) {
    return {{"paired_with_x", to_string(g.paired_with_x)}, {"h", g.h}, {"h_prime", g.h_prime}};
}

double number(const Json &v, const char *key) {
    if (!v.is_number()) {
        throw ValidationError(key, "expected a number");
    }
    return v.get<double>();
}

} // namespace

Json to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c) + 0.0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const SystemParams &p) {
    Json out = {{"kappa", p.kappa}, {"gamma_m", p.gamma_m}, {"gamma_a", p.gamma_a},
                {"g_m", p.g_m},     {"g_a", p.g_a},         {"n", p.n},
                {"n0", p.n0},       {"C_a", p.coop_a()},    {"G", p.big_g()},
                {"G_a", p.big_g_a()}};
    out["omega_m"] = p.omega_m ? Json(*p.omega_m) : Json(nullptr);
    return out;
}

Json to_json(const StabilityInfo &info, double gamma_ref) {
    return {{"stable", info.stable},
            {"max_real_eigenvalue", info.max_real_eigenvalue * gamma_ref},
            {"margin", info.margin() * gamma_ref}};
}

Json to_json(const SteeringReport &r) {
    const std::string ij = pair_name(r.i, r.j);
    const std::string ji = pair_name(r.j, r.i);
    return {{"i", std::string(1, mode_char(r.i))},
            {"j", std::string(1, mode_char(r.j))},
            {"E_" + ij, r.e_ij},
            {"E_" + ji, r.e_ji},
            {"gains_" + ij, gains_json(r.gains_ij)},
            {"gains_" + ji, gains_json(r.gains_ji)},
            {"classification", to_string(r.classification)}};
}

Json to_json(const EntanglementReport &r) {
    return {{"duan_simon", r.duan_simon},
            {"h_opt", r.h_opt},
            {"combination", to_string(r.combination)},
            {"lambda", r.lambda},
            {"log_negativity", r.log_negativity},
            {"entangled", r.lambda < kSteeringThreshold - kCriterionTolerance}};
}

Json to_json(const ValidationReport &r) {
    return {{"pass", r.pass},
            {"insufficient_statistics", r.insufficient_statistics},
            {"z_limit", r.z_limit},
            {"max_abs_z", r.max_abs_z},
            {"z_scores", to_json(r.z_scores)},
            {"reference", to_json(r.reference)},
            {"estimate", to_json(r.estimate.covariance.values())},
            {"standard_errors", to_json(r.estimate.standard_errors)},
            {"modes", mode_list(r.estimate.covariance.modes())},
            {"trajectories", r.estimate.trajectories},
            {"effective_samples", r.estimate.effective_samples},
            {"warnings", r.estimate.warnings}};
}

SystemParams params_from_json(const Json &doc, SystemParams base) {
    if (!doc.is_object()) {
        throw ValidationError("config", "expected a JSON object");
    }
    // Direct fields first, then derived rates so they see the final dampings.
    for (const char *key : {"kappa", "gamma_m", "gamma_a", "g_m", "g_a", "n", "n0", "omega_m"}) {
        if (doc.contains(key) && !doc[key].is_null()) {
            set_param(base, key, number(doc[key], key));
        }
    }
    for (const char *key : {"C_a", "G", "G_a"}) {
        if (doc.contains(key) && !doc[key].is_null()) {
            set_param(base, key, number(doc[key], key));
        }
    }
    return base;
}

SimulationConfig simulation_from_json(const Json &doc, SimulationConfig base) {
    if (!doc.is_object()) {
        throw ValidationError("simulation", "expected a JSON object");
    }
    if (doc.contains("dt")) base.dt = number(doc["dt"], "dt");
    if (doc.contains("burn_in")) base.burn_in = number(doc["burn_in"], "burn_in");
    if (doc.contains("sample_duration")) {
        base.sample_duration = number(doc["sample_duration"], "sample_duration");
    }
    if (doc.contains("n_trajectories")) {
        base.n_trajectories = doc["n_trajectories"].get<std::size_t>();
    }
    if (doc.contains("seed")) base.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("sample_stride")) base.sample_stride = doc["sample_stride"].get<std::size_t>();
    if (doc.contains("threads")) base.threads = doc["threads"].get<unsigned>();
    return base;
}

Json steady_state_report(ModelKind kind, const SystemParams &params, double gamma_ref) {
    const LinearModel model = build_model(kind, params);
    const StabilityInfo info = stability(model);
    const CovarianceMatrix v = steady_state(model);

    Json out;
    out["tool"] = std::string("cvsteer ") + kVersion;
    out["model"] = std::string(to_string(kind));
    out["params"] = to_json(params);
    out["gamma_ref"] = gamma_ref;
    out["modes"] = mode_list(v.modes());
    out["covariance"] = to_json(v.values());
    const Vector nu = v.symplectic_eigenvalues();
    out["symplectic_eigenvalues"] = std::vector<double>(nu.data(), nu.data() + nu.size());
    out["physical"] = v.is_physical();
    out["stability"] = to_json(info, gamma_ref);
    out["residual"] = residual(model, v);

    Json pairs = Json::array();
    const auto &modes = v.modes();
    for (std::size_t p = 0; p < modes.size(); ++p) {
        for (std::size_t q = p + 1; q < modes.size(); ++q) {
            pairs.push_back({{"pair", pair_name(modes[p], modes[q])},
                             {"steering", to_json(reid_steering(v, modes[p], modes[q]))},
                             {"entanglement", to_json(entanglement(v, modes[p], modes[q]))}});
        }
    }
    out["pairs"] = std::move(pairs);

    Json warnings = Json::array();
    if (auto w = adiabatic_regime_warning(kind, params); !w.empty()) {
        warnings.push_back(w);
    }
    out["warnings"] = std::move(warnings);
    return out;
}

Json stability_report(ModelKind kind, const SystemParams &params, double gamma_ref) {
    const LinearModel model = build_model(kind, params);
    Json out = to_json(stability(model), gamma_ref);
    out["model"] = std::string(to_string(kind));
    out["params"] = to_json(params);
    return out;
}

ValidationReport validate_against(const LinearModel &model, const Matrix &reference,
                                  const SimulationConfig &config, double z_limit) {
    return compare_to_reference(simulate(model, config), reference, z_limit);
}

Json validate_report(ModelKind kind, const SystemParams &params, const SimulationConfig &config,
                     std::optional<ModelKind> reference_kind, double z_limit) {
    const LinearModel model = build_model(kind, params);
    const ModelKind ref_kind = reference_kind.value_or(
        kind == ModelKind::full_nonrwa ? ModelKind::full_rwa : kind);
    const CovarianceMatrix reference = steady_state(build_model(ref_kind, params));
    Json out = to_json(validate_against(model, reference.values(), config, z_limit));
    out["model"] = std::string(to_string(kind));
    out["reference_model"] = std::string(to_string(ref_kind));
    out["params"] = to_json(params);
    out["seed"] = config.seed;
    out["dt"] = config.dt;
    return out;
}

} // namespace cvsteer
