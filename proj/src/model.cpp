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
#include "cvsteer/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvsteer/errors.hpp"

namespace cvsteer {

char mode_char(Mode m) noexcept {
    switch (m) {
    case Mode::a: return 'a';
    case Mode::b: return 'b';
    case Mode::c: return 'c';
    }
    return '?';
}

Mode parse_mode(char c) {
    switch (c) {
    case 'a': return Mode::a;
    case 'b': return Mode::b;
    case 'c': return Mode::c;
    default: throw ValidationError("mode", std::string("unknown mode '") + c + "'");
    }
}

LinearModel::LinearModel(std::vector<Mode> modes, Matrix drift, Matrix diffusion,
                         std::optional<PeriodicDrift> periodic)
    : modes_(std::move(modes)), drift_(std::move(drift)), diffusion_(std::move(diffusion)),
      periodic_(std::move(periodic)) {
    const auto dim = static_cast<Eigen::Index>(dimension());
    if (modes_.empty()) {
        throw ValidationError("modes", "model needs at least one mode");
    }
    if (drift_.rows() != dim || drift_.cols() != dim) {
        throw ValidationError("drift", "shape does not match the mode count");
    }
    if (diffusion_.rows() != dim || diffusion_.cols() != dim) {
        throw ValidationError("diffusion", "shape does not match the mode count");
    }
    const double scale = std::max(1.0, diffusion_.norm());
    if ((diffusion_ - diffusion_.transpose()).norm() > 1e-12 * scale) {
        throw ValidationError("diffusion", "must be symmetric");
    }
    if (periodic_) {
        if (periodic_->cos_part.rows() != dim || periodic_->cos_part.cols() != dim ||
            periodic_->sin_part.rows() != dim || periodic_->sin_part.cols() != dim) {
            throw ValidationError("periodic_drift", "shape does not match the mode count");
        }
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        for (std::size_t j = i + 1; j < modes_.size(); ++j) {
            if (modes_[i] == modes_[j]) {
                throw ValidationError("modes", "duplicate mode label");
            }
        }
    }
}

std::size_t LinearModel::slot_of(Mode m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end()) {
        throw ValidationError("mode", std::string("model has no mode '") + mode_char(m) + "'");
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

bool LinearModel::has_mode(Mode m) const noexcept {
    return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

Matrix LinearModel::drift_at(double t) const {
    if (!periodic_) {
        return drift_;
    }
    const double phase = periodic_->frequency * t;
    return drift_ + std::cos(phase) * periodic_->cos_part + std::sin(phase) * periodic_->sin_part;
}

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::full_rwa: return "full_rwa";
    case ModelKind::reduced_a: return "reduced_a";
    case ModelKind::reduced_b: return "reduced_b";
    case ModelKind::full_nonrwa: return "full_nonrwa";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "full_rwa") return ModelKind::full_rwa;
    if (name == "reduced_a") return ModelKind::reduced_a;
    if (name == "reduced_b") return ModelKind::reduced_b;
    if (name == "full_nonrwa") return ModelKind::full_nonrwa;
    throw ValidationError("model", "unknown model kind '" + std::string(name) + "'");
}

namespace {

void set_damping(Matrix &a, std::size_t slot, double rate) {
    a(x_index(slot), x_index(slot)) = -rate;
    a(p_index(slot), p_index(slot)) = -rate;
}

void set_noise(Matrix &d, std::size_t slot, double strength) {
    d(x_index(slot), x_index(slot)) = strength;
    d(p_index(slot), p_index(slot)) = strength;
}

// -i g (u^dagger) in the equation for v: Xdot_v -= g P_u, Pdot_v -= g X_u.
void add_parametric(Matrix &a, std::size_t v, std::size_t u, double g) {
    a(x_index(v), p_index(u)) += -g;
    a(p_index(v), x_index(u)) += -g;
}

// -i g u in the equation for v: Xdot_v += g P_u, Pdot_v -= g X_u.
void add_beam_splitter(Matrix &a, std::size_t v, std::size_t u, double g) {
    a(x_index(v), p_index(u)) += g;
    a(p_index(v), x_index(u)) += -g;
}

} // namespace

LinearModel build_full_rwa(const SystemParams &p) {
    p.validate();
    constexpr std::size_t sa = 0, sb = 1, sc = 2;
    Matrix a = Matrix::Zero(6, 6);
    set_damping(a, sa, p.kappa);
    set_damping(a, sb, p.gamma_m);
    set_damping(a, sc, p.gamma_a);
    add_beam_splitter(a, sa, sc, p.g_a);
    add_beam_splitter(a, sc, sa, p.g_a);
    add_parametric(a, sa, sb, p.g_m);
    add_parametric(a, sb, sa, p.g_m);

    Matrix d = Matrix::Zero(6, 6);
    set_noise(d, sa, 2.0 * p.kappa * (p.n + 0.5));
    set_noise(d, sb, 2.0 * p.gamma_m * (p.n0 + 0.5));
    set_noise(d, sc, 2.0 * p.gamma_a * (p.n + 0.5));
    return {{Mode::a, Mode::b, Mode::c}, std::move(a), std::move(d)};
}

LinearModel build_reduced_a(const SystemParams &p) {
    p.validate();
    constexpr std::size_t sa = 0, sb = 1;
    const double damping_a = p.kappa + p.coop_a();
    Matrix a = Matrix::Zero(4, 4);
    set_damping(a, sa, damping_a);
    set_damping(a, sb, p.gamma_m);
    add_parametric(a, sa, sb, p.g_m);
    add_parametric(a, sb, sa, p.g_m);

    // The atomic bath reaches the cavity through the filtered input, taken
    // here in its white-noise limit; it shares the occupation n.
    Matrix d = Matrix::Zero(4, 4);
    set_noise(d, sa, 2.0 * damping_a * (p.n + 0.5));
    set_noise(d, sb, 2.0 * p.gamma_m * (p.n0 + 0.5));
    return {{Mode::a, Mode::b}, std::move(a), std::move(d)};
}

LinearModel build_reduced_b(const SystemParams &p) {
    p.validate();
    constexpr std::size_t sb = 0, sc = 1;
    const double g = p.big_g();
    const double g_a = p.big_g_a();
    const double cross = std::sqrt(g * g_a);

    Matrix a = Matrix::Zero(4, 4);
    set_damping(a, sb, p.gamma_m - g);
    set_damping(a, sc, p.gamma_a + g_a);
    // +sqrt(G G_a) c^dagger in bdot and -sqrt(G G_a) b^dagger in cdot.
    a(x_index(sb), x_index(sc)) = cross;
    a(p_index(sb), p_index(sc)) = -cross;
    a(x_index(sc), x_index(sb)) = -cross;
    a(p_index(sc), p_index(sb)) = cross;

    // b sees i sqrt(2G) a_in^dagger, c sees i sqrt(2G_a) a_in: the X
    // components pick up opposite signs of P_in, the P components share X_in.
    const double thermal = p.n + 0.5;
    Matrix d = Matrix::Zero(4, 4);
    set_noise(d, sb, 2.0 * (p.gamma_m * (p.n0 + 0.5) + g * thermal));
    set_noise(d, sc, 2.0 * (p.gamma_a + g_a) * thermal);
    d(x_index(sb), x_index(sc)) = d(x_index(sc), x_index(sb)) = -2.0 * cross * thermal;
    d(p_index(sb), p_index(sc)) = d(p_index(sc), p_index(sb)) = 2.0 * cross * thermal;
    return {{Mode::b, Mode::c}, std::move(a), std::move(d)};
}

LinearModel build_full_nonrwa(const SystemParams &p) {
    if (!p.omega_m) {
        throw ValidationError("omega_m", "required for the non-RWA model");
    }
    LinearModel rwa = build_full_rwa(p);
    constexpr std::size_t sa = 0, sb = 1;
    const double g = p.g_m;

    // -i g_m a e^{+i theta} in bdot and -i g_m b e^{-i theta} in adot,
    // theta = 2 omega_m t, split into cos(theta) and sin(theta) parts.
    PeriodicDrift periodic{Matrix::Zero(6, 6), Matrix::Zero(6, 6), 2.0 * *p.omega_m};
    Matrix &cs = periodic.cos_part;
    Matrix &sn = periodic.sin_part;
    cs(x_index(sb), p_index(sa)) = g;
    cs(p_index(sb), x_index(sa)) = -g;
    cs(x_index(sa), p_index(sb)) = g;
    cs(p_index(sa), x_index(sb)) = -g;
    sn(x_index(sb), x_index(sa)) = g;
    sn(p_index(sb), p_index(sa)) = g;
    sn(x_index(sa), x_index(sb)) = -g;
    sn(p_index(sa), p_index(sb)) = -g;

    return {rwa.modes(), rwa.drift(), rwa.diffusion(), std::move(periodic)};
}

LinearModel build_model(ModelKind kind, const SystemParams &params) {
    switch (kind) {
    case ModelKind::full_rwa: return build_full_rwa(params);
    case ModelKind::reduced_a: return build_reduced_a(params);
    case ModelKind::reduced_b: return build_reduced_b(params);
    case ModelKind::full_nonrwa: return build_full_nonrwa(params);
    }
    throw ValidationError("model", "unknown model kind");
}

StabilityInfo stability(const LinearModel &model) {
    if (model.time_dependent()) {
        throw UnsupportedError("stability: time-dependent drift is not supported");
    }
    const Matrix &a = model.drift();
    Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("stability: eigenvalue computation failed");
    }
    const double max_re = solver.eigenvalues().real().maxCoeff();
    const double tol = 1e-12 * std::max(1.0, a.norm());
    return {max_re < -tol, max_re};
}

std::string adiabatic_regime_warning(ModelKind kind, const SystemParams &p) {
    std::ostringstream os;
    if (kind == ModelKind::reduced_a) {
        const double largest = std::max({p.kappa, p.gamma_m, p.g_a, p.g_m});
        if (p.gamma_a < 10.0 * largest) {
            os << "reduced_a: gamma_a = " << p.gamma_a
               << " is less than 10x the largest other rate (" << largest
               << "); adiabatic elimination may be inaccurate";
        }
    } else if (kind == ModelKind::reduced_b) {
        const double largest = std::max({p.gamma_a, p.gamma_m, p.g_a, p.g_m});
        if (p.kappa < 10.0 * largest) {
            os << "reduced_b: kappa = " << p.kappa << " is less than 10x the largest other rate ("
               << largest << "); adiabatic elimination may be inaccurate";
        }
    }
    return os.str();
}

} // namespace cvsteer
