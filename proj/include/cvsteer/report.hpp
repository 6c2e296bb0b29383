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

#include <json.hpp>

#include "cvsteer/criteria.hpp"
#include "cvsteer/langevin.hpp"
#include "cvsteer/sweep.hpp"

// JSON documents emitted by the command-line tool.

namespace cvsteer {

using Json = nlohmann::json;

Json to_json(const Matrix &m);
Json to_json(const SystemParams &p);
Json to_json(const StabilityInfo &info, double gamma_ref = 1.0);
Json to_json(const SteeringReport &r);
Json to_json(const EntanglementReport &r);
Json to_json(const ValidationReport &r);

/// Overlays the keys present in `doc` onto `base`. Unknown keys are ignored
/// so a single document can carry sweep and simulation settings too.
SystemParams params_from_json(const Json &doc, SystemParams base = {});
SimulationConfig simulation_from_json(const Json &doc, SimulationConfig base = {});

/// Covariance, symplectic eigenvalues, stability and criteria for every mode
/// pair. Throws StabilityError / NumericalError from the solve.
Json steady_state_report(ModelKind kind, const SystemParams &params, double gamma_ref = 1.0);

Json stability_report(ModelKind kind, const SystemParams &params, double gamma_ref = 1.0);

/// Monte-Carlo run compared against the Lyapunov covariance of
/// `reference_kind`, by default the same model (the rotating-wave model for
/// full_nonrwa).
Json validate_report(ModelKind kind, const SystemParams &params, const SimulationConfig &config,
                     std::optional<ModelKind> reference_kind = std::nullopt,
                     double z_limit = 4.0);

/// Same, against an explicitly supplied reference covariance.
ValidationReport validate_against(const LinearModel &model, const Matrix &reference,
                                  const SimulationConfig &config, double z_limit = 4.0);

} // namespace cvsteer
