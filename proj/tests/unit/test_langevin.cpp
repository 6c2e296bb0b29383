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
#include <doctest.h>

#include <cmath>

#include "cvsteer/errors.hpp"
#include "cvsteer/langevin.hpp"
#include "cvsteer/lyapunov.hpp"

using namespace cvsteer;

namespace {

SystemParams reference_params() {
    SystemParams p;
    p.gamma_a = 1e6;
    set_param(p, "C_a", 1.0);
    p.g_m = 0.5;
    return p;
}

SystemParams nonrwa_params(double omega) {
    SystemParams p;
    p.g_m = 0.5;
    p.g_a = 1.0;
    p.gamma_a = 5.0;
    p.omega_m = omega;
    return p;
}

double rel_frobenius(const Matrix &got, const Matrix &want) {
    return (got - want).norm() / want.norm();
}

} // namespace

TEST_CASE("noise matrix") {
    Vector d(4);
    d << 4.0, 9.0, 0.25, 0.0;
    const Matrix b = psd_sqrt(d.asDiagonal());
    CHECK(b(0, 0) == doctest::Approx(2.0));
    CHECK(b(1, 1) == doctest::Approx(3.0));
    CHECK(b(2, 2) == doctest::Approx(0.5));
    CHECK(std::abs(b(3, 3)) < 1e-12);
    CHECK(std::abs(b(0, 1)) < 1e-12);

    CHECK(psd_sqrt(Matrix::Zero(4, 4)).norm() == 0.0);

    SystemParams p;
    p.kappa = 1e6;
    p.n = 0.3;
    set_param(p, "G", 0.5);
    set_param(p, "G_a", 2.0);
    const LinearModel m = build_reduced_b(p);
    const Matrix bb = noise_matrix(m);
    const Matrix rebuilt = bb * bb.transpose();
    CHECK((rebuilt - m.diffusion()).norm() < 1e-12);
    CHECK(rebuilt(0, 2) == doctest::Approx(-2 * std::sqrt(0.5 * 2.0) * 0.8));

    Matrix neg = Matrix::Identity(2, 2);
    neg(1, 1) = -1.0;
    CHECK_THROWS_AS(psd_sqrt(neg), ValidationError);
}

TEST_CASE("config validation") {
    SimulationConfig c;
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SimulationConfig{};
    c.n_trajectories = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SimulationConfig{};
    c.burn_in = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("unstable drift is rejected") {
    SystemParams p;
    p.g_m = 1.5;
    CHECK_THROWS_AS(simulate(build_reduced_a(p), SimulationConfig{}), StabilityError);
}

TEST_CASE("single vacuum mode") {
    const LinearModel m({Mode::a}, -Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    SimulationConfig c;
    c.dt = 1e-3;
    c.burn_in = 10.0;
    c.sample_duration = 100.0;
    c.n_trajectories = 200;
    c.sample_stride = 10;
    const EnsembleEstimate est = simulate(m, c);
    const Matrix want = 0.5 * Matrix::Identity(2, 2);
    const ValidationReport r = compare_to_reference(est, want, 3.0);
    CHECK(r.pass);
    CHECK(r.max_abs_z <= 3.0);
}

TEST_CASE("reduced_a matches the Lyapunov covariance") {
    const LinearModel m = build_reduced_a(reference_params());
    const EnsembleEstimate est = simulate(m, SimulationConfig{});
    CHECK(est.effective_samples >= 10000);
    const ValidationReport r = compare_to_reference(est, steady_state(m).values(), 3.0);
    CHECK(r.pass);
    CHECK(est.warnings.empty());
}

TEST_CASE("bit-for-bit reproducible, independent of thread count") {
    const LinearModel m = build_reduced_a(reference_params());
    SimulationConfig c;
    c.n_trajectories = 8;
    c.sample_duration = 20.0;
    c.threads = 1;
    const EnsembleEstimate a = simulate(m, c);
    c.threads = 4;
    const EnsembleEstimate b = simulate(m, c);
    CHECK(a.covariance.values() == b.covariance.values());
    CHECK(a.standard_errors == b.standard_errors);
    c.seed += 1;
    const EnsembleEstimate other = simulate(m, c);
    CHECK(other.covariance.values() != a.covariance.values());
}

TEST_CASE("a mismatched reference fails validation") {
    SystemParams p = reference_params();
    const LinearModel m = build_reduced_a(p);
    p.kappa = 1e6;
    set_param(p, "G", 0.25);
    set_param(p, "G_a", 1.0);
    const Matrix wrong = steady_state(build_reduced_b(p)).values();
    const ValidationReport r = compare_to_reference(simulate(m, SimulationConfig{}), wrong);
    CHECK_FALSE(r.pass);
    CHECK(r.max_abs_z > 4.0);
}

TEST_CASE("a single trajectory has insufficient statistics") {
    const LinearModel m = build_reduced_a(reference_params());
    SimulationConfig c;
    c.n_trajectories = 1;
    const EnsembleEstimate est = simulate(m, c);
    CHECK(std::isnan(est.standard_errors(0, 0)));
    CHECK_FALSE(est.warnings.empty());
    const ValidationReport r = compare_to_reference(est, steady_state(m).values());
    CHECK(r.insufficient_statistics);
    CHECK_FALSE(r.pass);
}

TEST_CASE("counter-rotating terms average out at large mechanical frequency") {
    SimulationConfig c;
    c.dt = 1e-3;
    c.burn_in = 10.0;
    c.sample_duration = 40.0;
    c.n_trajectories = 96;
    c.sample_stride = 5;

    const SystemParams fast = nonrwa_params(50.0);
    const Matrix rwa = steady_state(build_full_rwa(fast)).values();
    const EnsembleEstimate high = simulate(build_full_nonrwa(fast), c);
    const double err_high = rel_frobenius(high.covariance.values(), rwa);
    CHECK(err_high <= 0.05);

    const SystemParams slow = nonrwa_params(1.0);
    const EnsembleEstimate low = simulate(build_full_nonrwa(slow), c);
    const double err_low = rel_frobenius(low.covariance.values(), rwa);
    CHECK(err_low > err_high);
}

TEST_CASE("coarse time steps produce a warning") {
    const LinearModel m = build_reduced_a(reference_params());
    SimulationConfig c;
    c.dt = 0.2;
    c.n_trajectories = 2;
    c.burn_in = 1.0;
    const EnsembleEstimate est = simulate(m, c);
    CHECK(est.warnings.size() >= 2);
}
