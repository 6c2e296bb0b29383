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
#include "cvsteer/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cvsteer/analytic.hpp"
#include "cvsteer/criteria.hpp"
#include "cvsteer/errors.hpp"

namespace cvsteer {

namespace {

enum class QuantityKind {
    variance,
    moment,
    reid,
    duan_simon,
    h_opt,
    lambda,
    log_negativity,
    corr,
    steer_threshold,
    ent_threshold,
    steer_margin,
    ent_margin,
    stability_margin,
    symplectic_min,
};

struct Quantity {
    QuantityKind kind = QuantityKind::variance;
    Mode first = Mode::a;
    Mode second = Mode::b;
    bool first_is_x = true;
    bool second_is_x = true;
};

struct PairQuantity {
    const char *name;
    QuantityKind kind;
};

constexpr PairQuantity kPairQuantities[] = {
    {"duan_simon", QuantityKind::duan_simon},
    {"h_opt", QuantityKind::h_opt},
    {"lambda", QuantityKind::lambda},
    {"log_negativity", QuantityKind::log_negativity},
    {"corr", QuantityKind::corr},
    {"steer_threshold", QuantityKind::steer_threshold},
    {"ent_threshold", QuantityKind::ent_threshold},
    {"steer_margin", QuantityKind::steer_margin},
    {"ent_margin", QuantityKind::ent_margin},
};

std::pair<Mode, Mode> default_pair(ModelKind kind) {
    if (kind == ModelKind::reduced_b) {
        return {Mode::c, Mode::b};
    }
    return {Mode::a, Mode::b};
}

std::vector<Mode> model_modes(ModelKind kind) {
    switch (kind) {
    case ModelKind::reduced_a: return {Mode::a, Mode::b};
    case ModelKind::reduced_b: return {Mode::b, Mode::c};
    default: return {Mode::a, Mode::b, Mode::c};
    }
}

bool quadrature_flag(char q, const std::string &name) {
    if (q == 'X') return true;
    if (q == 'P') return false;
    throw ValidationError("outputs", "bad quadrature in '" + name + "'");
}

Mode mode_in(ModelKind kind, char c, const std::string &name) {
    Mode m;
    try {
        m = parse_mode(c);
    } catch (const ValidationError &) {
        throw ValidationError("outputs", "unknown mode in '" + name + "'");
    }
    const auto modes = model_modes(kind);
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) {
        throw ValidationError("outputs", "'" + name + "' refers to a mode the " +
                                             std::string(to_string(kind)) + " model lacks");
    }
    return m;
}

Quantity parse_quantity(const std::string &name, ModelKind kind) {
    Quantity q;
    if (name == "stability_margin") {
        q.kind = QuantityKind::stability_margin;
        return q;
    }
    if (name == "symplectic_min") {
        q.kind = QuantityKind::symplectic_min;
        return q;
    }
    if (name.size() == 6 && name.rfind("var_", 0) == 0) {
        q.kind = QuantityKind::variance;
        q.first_is_x = quadrature_flag(name[4], name);
        q.first = mode_in(kind, name[5], name);
        return q;
    }
    if (name.size() == 9 && name.rfind("corr_", 0) == 0) {
        q.kind = QuantityKind::moment;
        q.first_is_x = quadrature_flag(name[5], name);
        q.first = mode_in(kind, name[6], name);
        q.second_is_x = quadrature_flag(name[7], name);
        q.second = mode_in(kind, name[8], name);
        return q;
    }
    if (name.size() == 4 && name.rfind("E_", 0) == 0) {
        q.kind = QuantityKind::reid;
        q.first = mode_in(kind, name[2], name);
        q.second = mode_in(kind, name[3], name);
        if (q.first == q.second) {
            throw ValidationError("outputs", "'" + name + "' needs two distinct modes");
        }
        return q;
    }
    for (const auto &pq : kPairQuantities) {
        const std::string base = pq.name;
        if (name == base) {
            q.kind = pq.kind;
            std::tie(q.first, q.second) = default_pair(kind);
            const auto modes = model_modes(kind);
            if (std::find(modes.begin(), modes.end(), q.first) == modes.end()) {
                throw ValidationError("outputs", "'" + name + "' has no default pair here");
            }
            return q;
        }
        if (name.size() == base.size() + 3 && name.rfind(base + "_", 0) == 0) {
            q.kind = pq.kind;
            q.first = mode_in(kind, name[base.size() + 1], name);
            q.second = mode_in(kind, name[base.size() + 2], name);
            if (q.first == q.second) {
                throw ValidationError("outputs", "'" + name + "' needs two distinct modes");
            }
            return q;
        }
    }
    throw ValidationError("outputs", "unknown quantity '" + name + "'");
}

struct ThresholdTriple {
    double corr = 0.0;
    double steer = 0.0;
    double ent = 0.0;
};

ThresholdTriple thresholds(const CovarianceMatrix &v, Mode i, Mode j) {
    const DirectionalSteering d = reid_parameter(v, i, j);
    const bool oj_is_x = d.gains.paired_with_x == Quadrature::x;
    const double var_xi = v.var_x(i);
    const double var_oj = oj_is_x ? v.var_x(j) : v.var_p(j);
    ThresholdTriple t;
    t.corr = std::abs(v.corr(i, true, j, oj_is_x));
    t.steer = std::sqrt(var_oj * std::max(0.0, var_xi - 0.5));
    t.ent = std::sqrt(std::max(0.0, var_oj - 0.5) * std::max(0.0, var_xi - 0.5));
    return t;
}

bool equal_occupations(const SystemParams &p) {
    return std::abs(p.n - p.n0) <= 1e-12 * std::max({1.0, p.n, p.n0});
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string describe_params(const SystemParams &p) {
    std::ostringstream os;
    os << "kappa=" << format_number(p.kappa) << " gamma_m=" << format_number(p.gamma_m)
       << " gamma_a=" << format_number(p.gamma_a) << " g_m=" << format_number(p.g_m)
       << " g_a=" << format_number(p.g_a) << " n=" << format_number(p.n)
       << " n0=" << format_number(p.n0);
    if (p.omega_m) {
        os << " omega_m=" << format_number(*p.omega_m);
    }
    os << " (C_a=" << format_number(p.coop_a()) << " G=" << format_number(p.big_g())
       << " G_a=" << format_number(p.big_g_a()) << ")";
    return os.str();
}

} // namespace

void SweepRange::validate() const {
    if (count < 2) {
        throw ValidationError("count", "must be >= 2");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw ValidationError("start", "need finite start < stop");
    }
    if (spacing == Spacing::log && !(start > 0.0)) {
        throw ValidationError("start", "log spacing needs start > 0");
    }
}

std::vector<double> SweepRange::grid() const {
    validate();
    std::vector<double> out(count);
    const double last = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        const double f = static_cast<double>(k) / last;
        if (spacing == Spacing::linear) {
            out[k] = start + f * (stop - start);
        } else {
            out[k] = std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
        }
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

void SweepSpec::validate() const {
    range.validate();
    if (!is_param_name(parameter)) {
        throw ValidationError("sweep", "cannot resolve parameter '" + parameter + "'");
    }
    if (model == ModelKind::full_nonrwa) {
        throw ValidationError("model", "sweeps need a time-independent model");
    }
    if (!(gamma_ref > 0.0) || !std::isfinite(gamma_ref)) {
        throw ValidationError("gamma_ref", "must be finite and > 0");
    }
    if (outputs.empty()) {
        throw ValidationError("outputs", "no quantities requested");
    }
    for (const auto &name : outputs) {
        parse_quantity(name, model);
    }
}

std::size_t Table::column_index(const std::string &name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw ValidationError("column", "no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<std::optional<double>> Table::column(const std::string &name) const {
    const std::size_t idx = column_index(name);
    std::vector<std::optional<double>> out;
    out.reserve(rows.size());
    for (const auto &row : rows) {
        out.push_back(row.values[idx]);
    }
    return out;
}

void write_csv(const Table &table, std::ostream &out) {
    for (const auto &line : table.metadata) {
        out << "# " << line << '\n';
    }
    out << table.swept_name << ",stable";
    for (const auto &c : table.columns) {
        out << ',' << c;
    }
    out << '\n';
    for (const auto &row : table.rows) {
        out << format_number(row.swept) << ',' << (row.stable ? "true" : "false");
        for (const auto &cell : row.values) {
            out << ',';
            if (cell) {
                out << format_number(*cell);
            }
        }
        out << '\n';
    }
}

std::string to_csv(const Table &table) {
    std::ostringstream os;
    write_csv(table, os);
    return os.str();
}

bool has_analytic(const std::string &quantity, ModelKind kind) {
    if (kind != ModelKind::reduced_a && kind != ModelKind::reduced_b) {
        return false;
    }
    const Quantity q = parse_quantity(quantity, kind);
    switch (q.kind) {
    case QuantityKind::variance:
    case QuantityKind::moment:
    case QuantityKind::reid: return true;
    case QuantityKind::corr:
    case QuantityKind::steer_threshold:
    case QuantityKind::ent_threshold:
    case QuantityKind::steer_margin:
    case QuantityKind::ent_margin:
        return kind == ModelKind::reduced_a && q.first == Mode::a && q.second == Mode::b;
    default: return false;
    }
}

std::optional<CovarianceMatrix> analytic_covariance(ModelKind kind, const SystemParams &params) {
    if (kind == ModelKind::reduced_a && analytic::case1_applicable(params)) {
        const auto m = analytic::case1_moments(params);
        Matrix v = Matrix::Zero(4, 4);
        v(0, 0) = v(1, 1) = m.var_xa;
        v(2, 2) = v(3, 3) = m.var_xb;
        v(0, 3) = v(3, 0) = m.corr_xa_pb;
        v(1, 2) = v(2, 1) = m.corr_xa_pb;
        return CovarianceMatrix({Mode::a, Mode::b}, std::move(v));
    }
    if (kind == ModelKind::reduced_b && analytic::case2_applicable(params)) {
        const auto m = analytic::case2_moments(params);
        Matrix v = Matrix::Zero(4, 4);
        v(0, 0) = v(1, 1) = m.var_xb;
        v(2, 2) = v(3, 3) = m.var_xc;
        v(0, 2) = v(2, 0) = m.corr_xb_xc;
        v(1, 3) = v(3, 1) = -m.corr_xb_xc;
        return CovarianceMatrix({Mode::b, Mode::c}, std::move(v));
    }
    return std::nullopt;
}

std::optional<double> analytic_quantity(const std::string &quantity, ModelKind kind,
                                        const SystemParams &params) {
    if (!has_analytic(quantity, kind)) {
        return std::nullopt;
    }
    const Quantity q = parse_quantity(quantity, kind);
    const auto cov = analytic_covariance(kind, params);
    if (!cov) {
        return std::nullopt;
    }
    switch (q.kind) {
    case QuantityKind::variance:
        return q.first_is_x ? cov->var_x(q.first) : cov->var_p(q.first);
    case QuantityKind::moment:
        return cov->corr(q.first, q.first_is_x, q.second, q.second_is_x);
    case QuantityKind::reid: {
        if (!equal_occupations(params)) {
            return std::nullopt;
        }
        if (kind == ModelKind::reduced_a) {
            const auto s = analytic::steering_case1(params);
            return q.first == Mode::a ? s.e_ab : s.e_ba;
        }
        const auto s = analytic::steering_case2(params);
        return q.first == Mode::c ? s.e_cb : s.e_bc;
    }
    default: break;
    }
    const auto t = analytic::thresholds_case1(params);
    switch (q.kind) {
    case QuantityKind::corr: return t.corr;
    case QuantityKind::steer_threshold: return t.steer_threshold;
    case QuantityKind::ent_threshold: return t.ent_threshold;
    case QuantityKind::steer_margin: return t.corr - t.steer_threshold;
    case QuantityKind::ent_margin: return t.corr - t.ent_threshold;
    default: return std::nullopt;
    }
}

double evaluate_quantity(const std::string &quantity, ModelKind kind, const CovarianceMatrix &v,
                         const StabilityInfo &info, double gamma_ref) {
    const Quantity q = parse_quantity(quantity, kind);
    switch (q.kind) {
    case QuantityKind::variance: return q.first_is_x ? v.var_x(q.first) : v.var_p(q.first);
    case QuantityKind::moment: return v.corr(q.first, q.first_is_x, q.second, q.second_is_x);
    case QuantityKind::reid: return reid_parameter(v, q.first, q.second).value;
    case QuantityKind::duan_simon: return duan_simon(v, q.first, q.second).value;
    case QuantityKind::h_opt: return duan_simon(v, q.first, q.second).h_opt;
    case QuantityKind::lambda: return log_negativity(v, q.first, q.second).lambda;
    case QuantityKind::log_negativity: return log_negativity(v, q.first, q.second).log_negativity;
    case QuantityKind::corr: return thresholds(v, q.first, q.second).corr;
    case QuantityKind::steer_threshold: return thresholds(v, q.first, q.second).steer;
    case QuantityKind::ent_threshold: return thresholds(v, q.first, q.second).ent;
    case QuantityKind::steer_margin: {
        const auto t = thresholds(v, q.first, q.second);
        return t.corr - t.steer;
    }
    case QuantityKind::ent_margin: {
        const auto t = thresholds(v, q.first, q.second);
        return t.corr - t.ent;
    }
    case QuantityKind::stability_margin: return info.margin() * gamma_ref;
    case QuantityKind::symplectic_min: return v.symplectic_eigenvalues().minCoeff();
    }
    throw ValidationError("outputs", "unknown quantity '" + quantity + "'");
}

Table run_sweep(const SweepSpec &spec) {
    spec.validate();
    const std::vector<double> grid = spec.range.grid();
    const bool rate = is_rate_param(spec.parameter);

    Table table;
    table.swept_name = spec.parameter;
    std::vector<bool> analytic_cols;
    for (const auto &name : spec.outputs) {
        table.columns.push_back(name);
        const bool has = has_analytic(name, spec.model);
        analytic_cols.push_back(has);
        if (has) {
            table.columns.push_back(name + "_analytic");
            table.columns.push_back(name + "_absdiff");
        }
    }

    table.metadata.push_back(std::string("cvsteer ") + kVersion);
    table.metadata.push_back("model: " + std::string(to_string(spec.model)));
    table.metadata.push_back("sweep: " + spec.parameter + " " +
                             (spec.range.spacing == Spacing::linear ? "linear" : "log") + " [" +
                             format_number(spec.range.start) + ", " +
                             format_number(spec.range.stop) + "] x " +
                             std::to_string(spec.range.count));
    table.metadata.push_back("fixed: " + describe_params(spec.fixed));
    table.metadata.push_back("gamma_ref: " + format_number(spec.gamma_ref));

    std::string warning;
    for (double x : grid) {
        SystemParams params = spec.fixed;
        set_param(params, spec.parameter, x);
        const LinearModel model = build_model(spec.model, params);
        if (warning.empty()) {
            warning = adiabatic_regime_warning(spec.model, params);
        }

        SweepRow row;
        row.swept = rate ? x * spec.gamma_ref : x;
        row.values.assign(table.columns.size(), std::nullopt);
        const StabilityInfo info = stability(model);
        std::optional<CovarianceMatrix> v;
        if (info.stable) {
            try {
                v = steady_state(model);
            } catch (const NumericalError &) {
                v.reset();
            }
        }
        row.stable = v.has_value();
        if (v) {
            std::size_t col = 0;
            for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
                const double num = evaluate_quantity(spec.outputs[k], spec.model, *v, info,
                                                     spec.gamma_ref);
                row.values[col++] = num;
                if (analytic_cols[k]) {
                    const auto ana = analytic_quantity(spec.outputs[k], spec.model, params);
                    row.values[col++] = ana;
                    row.values[col++] = ana ? std::optional<double>(std::abs(num - *ana))
                                            : std::nullopt;
                }
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!warning.empty()) {
        table.metadata.push_back("warning: " + warning);
    }
    return table;
}

std::vector<std::string> figure_ids() {
    return {"2a_a", "2a_b", "2_a", "2_b", "3_a", "3_b", "4", "5", "6"};
}

namespace {

constexpr std::size_t kFigurePoints = 200;
// Fast-mode damping used for the reduced models in figures. Only the
// couplings divided by it enter; it just keeps the regime check quiet.
constexpr double kFastRate = 1e6;

SystemParams case1_base() {
    SystemParams p;
    p.kappa = 1.0;
    p.gamma_m = 1.0;
    p.gamma_a = kFastRate;
    return p;
}

SystemParams case2_base() {
    SystemParams p;
    p.kappa = kFastRate;
    p.gamma_m = 1.0;
    p.gamma_a = 1.0;
    return p;
}

FigureSeries make_series(const std::string &figure, const std::string &stem,
                         const std::string &label, SweepSpec spec) {
    FigureSeries s;
    s.name = stem;
    s.spec = std::move(spec);
    s.table = run_sweep(s.spec);
    s.table.metadata.insert(s.table.metadata.begin() + 1,
                            {"figure: " + figure, "series: " + label});
    return s;
}

std::string tag(double v) { return format_number(v); }

} // namespace

std::vector<FigureSeries> reproduce_figure(const std::string &id) {
    std::vector<FigureSeries> out;
    const SweepRange ca_range{0.0, 10.0, kFigurePoints, Spacing::linear};
    const std::vector<std::string> case1_steering = {"E_ab", "E_ba", "var_Xa", "var_Xb"};
    const std::vector<std::string> case1_entanglement = {"duan_simon", "h_opt", "lambda",
                                                         "log_negativity"};
    const std::vector<std::string> case2_steering = {"E_cb", "E_bc", "var_Xb", "var_Xc"};

    if (id == "2a_a") {
        SweepSpec spec;
        spec.model = ModelKind::reduced_a;
        spec.fixed = case1_base();
        spec.parameter = "g_m";
        // g_m in (0, 0.95 * sqrt(gamma (gamma + C_a))] with C_a = 0.
        const double top = 0.95;
        spec.range = {top / kFigurePoints, top, kFigurePoints, Spacing::linear};
        spec.outputs = {"corr", "steer_threshold", "ent_threshold", "steer_margin", "ent_margin"};
        out.push_back(make_series(id, "fig2a_a", "C_a=0 n=n0=0", spec));
    } else if (id == "2a_b") {
        SweepSpec spec;
        spec.model = ModelKind::reduced_a;
        spec.fixed = case1_base();
        spec.fixed.g_m = 0.5;
        spec.parameter = "C_a";
        spec.range = ca_range;
        spec.outputs = {"corr", "steer_threshold", "ent_threshold", "steer_margin", "ent_margin"};
        out.push_back(make_series(id, "fig2a_b", "g_m=0.5 n=n0=0", spec));
    } else if (id == "2_a" || id == "3_a") {
        const bool steering = id == "2_a";
        for (double g : {0.25, 0.5, 1.0}) {
            SweepSpec spec;
            spec.model = ModelKind::reduced_a;
            spec.fixed = case1_base();
            spec.fixed.g_m = g;
            spec.parameter = "C_a";
            spec.range = ca_range;
            spec.outputs = steering ? case1_steering : case1_entanglement;
            const std::string stem = std::string(steering ? "fig2_a" : "fig3_a") + "_gm" + tag(g);
            out.push_back(make_series(id, stem, "g_m=" + tag(g) + " n=n0=0", spec));
        }
    } else if (id == "2_b" || id == "3_b") {
        const bool steering = id == "2_b";
        for (double n0 : {0.0, 1.0, 1.5}) {
            SweepSpec spec;
            spec.model = ModelKind::reduced_a;
            spec.fixed = case1_base();
            spec.fixed.g_m = 1.0;
            spec.fixed.n0 = n0;
            spec.parameter = "C_a";
            spec.range = ca_range;
            spec.outputs = steering ? case1_steering : case1_entanglement;
            const std::string stem = std::string(steering ? "fig2_b" : "fig3_b") + "_n0" + tag(n0);
            out.push_back(make_series(id, stem, "g_m=1 n=0 n0=" + tag(n0), spec));
        }
    } else if (id == "4" || id == "5") {
        const bool weak = id == "4";
        const std::vector<double> couplings =
            weak ? std::vector<double>{0.25, 0.5, 1.0} : std::vector<double>{5.0, 10.0, 25.0};
        for (double g : couplings) {
            SweepSpec spec;
            spec.model = ModelKind::reduced_b;
            spec.fixed = case2_base();
            set_param(spec.fixed, "G", g);
            spec.parameter = "G_a";
            spec.range = {0.0, weak ? 10.0 : 100.0, kFigurePoints, Spacing::linear};
            spec.outputs = case2_steering;
            const std::string stem = std::string(weak ? "fig4" : "fig5") + "_G" + tag(g);
            out.push_back(make_series(id, stem, "G=" + tag(g) + " n=n0=0", spec));
        }
    } else if (id == "6") {
        for (auto [n, n0] : {std::pair{0.0, 0.0}, std::pair{0.0, 1.0}, std::pair{1.0, 0.0}}) {
            SweepSpec spec;
            spec.model = ModelKind::reduced_b;
            spec.fixed = case2_base();
            set_param(spec.fixed, "G", 1.0);
            spec.fixed.n = n;
            spec.fixed.n0 = n0;
            spec.parameter = "G_a";
            spec.range = ca_range;
            spec.outputs = case2_steering;
            const std::string stem = "fig6_n" + tag(n) + "_n0" + tag(n0);
            out.push_back(make_series(id, stem, "G=1 n=" + tag(n) + " n0=" + tag(n0), spec));
        }
    } else {
        throw ValidationError("figure", "unknown figure id '" + id + "'");
    }
    return out;
}

} // namespace cvsteer
