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
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvsteer/errors.hpp"
#include "cvsteer/report.hpp"
#include "cvsteer/sweep.hpp"

namespace {

using cvsteer::Json;

enum ExitCode { kOk = 0, kValidation = 2, kInstability = 3, kNumerical = 4 };

struct ParamFlags {
    std::optional<double> kappa, gamma_m, gamma_a, g_m, g_a, n, n0, omega_m;
    std::optional<double> coop_a, big_g, big_g_a;
};

struct Options {
    std::optional<std::string> model;
    ParamFlags params;
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::string format;
    double gamma_ref = 1.0;

    // sweep
    std::string sweep_param;
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
    bool log_spacing = false;
    std::vector<std::string> outputs;

    // figure
    std::string figure_id;

    // validate
    std::optional<std::uint64_t> seed;
    std::optional<double> dt, burn_in, duration;
    std::optional<std::size_t> trajectories, stride;
    std::optional<unsigned> threads;
    std::optional<std::string> reference_model;
    double z_limit = 4.0;
};

void add_model_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--model", o.model, "full_rwa | reduced_a | reduced_b | full_nonrwa");
    cmd->add_option("--kappa", o.params.kappa, "cavity damping");
    cmd->add_option("--gamma-m", o.params.gamma_m, "mirror damping");
    cmd->add_option("--gamma-a", o.params.gamma_a, "atomic damping");
    cmd->add_option("--g-m", o.params.g_m, "cavity-mirror coupling");
    cmd->add_option("--g-a", o.params.g_a, "cavity-atom coupling");
    cmd->add_option("--n", o.params.n, "optical/atomic bath occupation");
    cmd->add_option("--n0", o.params.n0, "mechanical bath occupation");
    cmd->add_option("--omega-m", o.params.omega_m, "mechanical frequency (full_nonrwa)");
    cmd->add_option("--C-a", o.params.coop_a, "sets g_a from C_a = g_a^2 / gamma_a");
    cmd->add_option("--G", o.params.big_g, "sets g_m from G = g_m^2 / kappa");
    cmd->add_option("--G-a", o.params.big_g_a, "sets g_a from G_a = g_a^2 / kappa");
    cmd->add_option("--config", o.config, "JSON document; flags override its values");
    cmd->add_option("--gamma-ref", o.gamma_ref, "scale for rate-valued output")
        ->check(CLI::PositiveNumber);
}

Json read_config(const Options &o) {
    if (!o.config) {
        return Json::object();
    }
    std::ifstream in(*o.config);
    if (!in) {
        throw cvsteer::ValidationError("config", "cannot open " + *o.config);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw cvsteer::ValidationError("config", e.what());
    }
}

cvsteer::SystemParams resolve_params(const Options &o, const Json &config) {
    cvsteer::SystemParams p = cvsteer::params_from_json(config);
    const ParamFlags &f = o.params;
    auto apply = [&p](const char *name, const std::optional<double> &v) {
        if (v) {
            cvsteer::set_param(p, name, *v);
        }
    };
    apply("kappa", f.kappa);
    apply("gamma_m", f.gamma_m);
    apply("gamma_a", f.gamma_a);
    apply("g_m", f.g_m);
    apply("g_a", f.g_a);
    apply("n", f.n);
    apply("n0", f.n0);
    apply("omega_m", f.omega_m);
    apply("C_a", f.coop_a);
    apply("G", f.big_g);
    apply("G_a", f.big_g_a);
    p.validate();
    return p;
}

std::string model_name(const Options &o, const Json &config) {
    if (o.model) {
        return *o.model;
    }
    if (config.contains("model")) {
        return config["model"].get<std::string>();
    }
    return "reduced_a";
}

void emit(const Options &o, const std::string &text) {
    if (o.out) {
        std::ofstream file(*o.out, std::ios::binary);
        if (!file) {
            throw cvsteer::ValidationError("out", "cannot write " + *o.out);
        }
        file << text;
    } else {
        std::cout << text;
    }
}

Json table_json(const cvsteer::Table &t) {
    Json rows = Json::array();
    for (const auto &r : t.rows) {
        Json row = {{t.swept_name, r.swept}, {"stable", r.stable}};
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            row[t.columns[c]] = r.values[c] ? Json(*r.values[c]) : Json(nullptr);
        }
        rows.push_back(std::move(row));
    }
    return {{"metadata", t.metadata}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

void check_format(const std::string &format) {
    if (format != "csv" && format != "json") {
        throw cvsteer::ValidationError("format", "expected csv or json");
    }
}

int run_steady_state(const Options &o) {
    const Json config = read_config(o);
    const auto kind = cvsteer::parse_model_kind(model_name(o, config));
    const auto params = resolve_params(o, config);
    if (auto w = cvsteer::adiabatic_regime_warning(kind, params); !w.empty()) {
        std::cerr << "warning: " << w << "\n";
    }
    emit(o, cvsteer::steady_state_report(kind, params, o.gamma_ref).dump(2) + "\n");
    return kOk;
}

int run_stability(const Options &o) {
    const Json config = read_config(o);
    const auto kind = cvsteer::parse_model_kind(model_name(o, config));
    emit(o, cvsteer::stability_report(kind, resolve_params(o, config), o.gamma_ref).dump(2) + "\n");
    return kOk;
}

int run_sweep_cmd(const Options &o) {
    const Json config = read_config(o);
    cvsteer::SweepSpec spec;
    spec.model = cvsteer::parse_model_kind(model_name(o, config));
    spec.fixed = resolve_params(o, config);
    spec.parameter = o.sweep_param;
    spec.range = {o.start, o.stop, o.count,
                  o.log_spacing ? cvsteer::Spacing::log : cvsteer::Spacing::linear};
    spec.outputs = o.outputs;
    spec.gamma_ref = o.gamma_ref;
    if (auto w = cvsteer::adiabatic_regime_warning(spec.model, spec.fixed); !w.empty()) {
        std::cerr << "warning: " << w << "\n";
    }
    const std::string format = o.format.empty() ? "csv" : o.format;
    check_format(format);
    const cvsteer::Table table = cvsteer::run_sweep(spec);
    emit(o, format == "csv" ? cvsteer::to_csv(table) : table_json(table).dump(2) + "\n");
    return kOk;
}

int run_figure(const Options &o) {
    const std::string format = o.format.empty() ? "csv" : o.format;
    check_format(format);
    const std::filesystem::path dir = o.out ? *o.out : ".";
    std::filesystem::create_directories(dir);
    for (const auto &series : cvsteer::reproduce_figure(o.figure_id)) {
        const auto path = dir / (series.name + "." + format);
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw cvsteer::ValidationError("out", "cannot write " + path.string());
        }
        if (format == "csv") {
            cvsteer::write_csv(series.table, file);
        } else {
            file << table_json(series.table).dump(2) << "\n";
        }
        std::cout << path.string() << "\n";
    }
    return kOk;
}

int run_validate(const Options &o) {
    const Json config = read_config(o);
    const auto kind = cvsteer::parse_model_kind(model_name(o, config));
    const auto params = resolve_params(o, config);
    cvsteer::SimulationConfig sim;
    if (config.contains("simulation")) {
        sim = cvsteer::simulation_from_json(config["simulation"], sim);
    }
    if (o.seed) sim.seed = *o.seed;
    if (o.dt) sim.dt = *o.dt;
    if (o.burn_in) sim.burn_in = *o.burn_in;
    if (o.duration) sim.sample_duration = *o.duration;
    if (o.trajectories) sim.n_trajectories = *o.trajectories;
    if (o.stride) sim.sample_stride = *o.stride;
    if (o.threads) sim.threads = *o.threads;
    std::optional<cvsteer::ModelKind> ref;
    if (o.reference_model) {
        ref = cvsteer::parse_model_kind(*o.reference_model);
    }
    const Json report = cvsteer::validate_report(kind, params, sim, ref, o.z_limit);
    for (const auto &w : report["warnings"]) {
        std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
    emit(o, report.dump(2) + "\n");
    return kOk;
}

int report_error(const char *kind, const std::string &message, int code, Json extra = {}) {
    Json err = {{"error", kind}, {"message", message}};
    if (extra.is_object()) {
        err.update(extra);
    }
    std::cerr << err.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Steady-state steering and entanglement of linear three-mode optomechanics"};
    app.set_version_flag("--version", std::string(cvsteer::kVersion));
    app.require_subcommand(1);
    Options o;

    auto *steady = app.add_subcommand("steady-state", "covariance and criteria as JSON");
    add_model_flags(steady, o);
    steady->add_option("--out", o.out, "output file (default stdout)");
    steady->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

    auto *stab = app.add_subcommand("stability", "drift eigenvalue margin as JSON");
    add_model_flags(stab, o);
    stab->add_option("--out", o.out, "output file (default stdout)");
    stab->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

    auto *sweep = app.add_subcommand("sweep", "one-parameter scan");
    add_model_flags(sweep, o);
    sweep->add_option("--sweep", o.sweep_param, "parameter to scan")->required();
    sweep->add_option("--start", o.start)->required();
    sweep->add_option("--stop", o.stop)->required();
    sweep->add_option("--count", o.count)->required();
    sweep->add_flag("--log", o.log_spacing, "logarithmic spacing");
    sweep->add_option("--outputs", o.outputs, "quantity names")->delimiter(',')->required();
    sweep->add_option("--out", o.out, "output file (default stdout)");
    sweep->add_option("--format", o.format, "csv | json");

    auto *figure = app.add_subcommand("figure", "regenerate a figure's data set");
    figure->add_option("id", o.figure_id, "2a_a 2a_b 2_a 2_b 3_a 3_b 4 5 6")->required();
    figure->add_option("--out", o.out, "output directory (default .)");
    figure->add_option("--format", o.format, "csv | json");

    auto *validate = app.add_subcommand("validate", "Monte-Carlo check of the steady state");
    add_model_flags(validate, o);
    validate->add_option("--seed", o.seed);
    validate->add_option("--dt", o.dt);
    validate->add_option("--burn-in", o.burn_in);
    validate->add_option("--duration", o.duration, "sampling window per trajectory");
    validate->add_option("--trajectories", o.trajectories);
    validate->add_option("--stride", o.stride, "steps between recorded samples");
    validate->add_option("--threads", o.threads, "0 = hardware concurrency");
    validate->add_option("--reference-model", o.reference_model,
                         "model whose Lyapunov covariance is the reference");
    validate->add_option("--z-limit", o.z_limit);
    validate->add_option("--out", o.out, "output file (default stdout)");
    validate->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kValidation;
    }

    try {
        if (steady->parsed()) return run_steady_state(o);
        if (stab->parsed()) return run_stability(o);
        if (sweep->parsed()) return run_sweep_cmd(o);
        if (figure->parsed()) return run_figure(o);
        if (validate->parsed()) return run_validate(o);
    } catch (const cvsteer::StabilityError &e) {
        return report_error("instability", e.what(), kInstability,
                            {{"max_real_eigenvalue", e.max_real_eigenvalue()}});
    } catch (const cvsteer::ValidationError &e) {
        return report_error("validation", e.what(), kValidation, {{"field", e.field()}});
    } catch (const cvsteer::UnsupportedError &e) {
        return report_error("validation", e.what(), kValidation);
    } catch (const cvsteer::NumericalError &e) {
        return report_error("numerical", e.what(), kNumerical);
    } catch (const Json::exception &e) {
        return report_error("validation", e.what(), kValidation);
    } catch (const std::filesystem::filesystem_error &e) {
        return report_error("validation", e.what(), kValidation);
    }
    return kValidation;
}
