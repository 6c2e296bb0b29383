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
#include "cvsteer/langevin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvsteer/errors.hpp"

namespace cvsteer {

namespace {

// One-step transition x_{k+1} = phi x_k + noise * z, z ~ N(0, I).
struct Stepper {
    Matrix phi;
    Matrix noise;
};

Stepper exact_stepper(const Matrix &a, const Matrix &d, double dt) {
    // Van Loan: exp([[-A, D], [0, A^T]] dt) = [[., F12], [0, F22]],
    // Phi = F22^T and Q = Phi F12.
    const Eigen::Index n = a.rows();
    Matrix block = Matrix::Zero(2 * n, 2 * n);
    block.topLeftCorner(n, n) = -a * dt;
    block.topRightCorner(n, n) = d * dt;
    block.bottomRightCorner(n, n) = a.transpose() * dt;
    const Matrix f = block.exp();
    Stepper s;
    s.phi = f.bottomRightCorner(n, n).transpose();
    Matrix q = s.phi * f.topRightCorner(n, n);
    q = 0.5 * (q + q.transpose()).eval();
    s.noise = psd_sqrt(q);
    return s;
}

std::mt19937_64 trajectory_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::size_t step_count(double duration, double dt) {
    return static_cast<std::size_t>(std::llround(duration / dt));
}

} // namespace

void SimulationConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("dt", "must be finite and > 0");
    }
    if (!(burn_in >= 0.0) || !std::isfinite(burn_in)) {
        throw ValidationError("burn_in", "must be finite and >= 0");
    }
    if (!(sample_duration > 0.0) || !std::isfinite(sample_duration)) {
        throw ValidationError("sample_duration", "must be finite and > 0");
    }
    if (n_trajectories < 1) {
        throw ValidationError("n_trajectories", "must be >= 1");
    }
    if (sample_stride < 1) {
        throw ValidationError("sample_stride", "must be >= 1");
    }
    if (step_count(sample_duration, dt) < sample_stride) {
        throw ValidationError("sample_duration", "window shorter than one sample");
    }
}

Matrix psd_sqrt(const Matrix &d) {
    if (d.rows() != d.cols()) {
        throw ValidationError("diffusion", "must be square");
    }
    const double norm = d.norm();
    if (norm == 0.0) {
        return Matrix::Zero(d.rows(), d.cols());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(d);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("noise_matrix: eigen decomposition failed");
    }
    Vector ev = solver.eigenvalues();
    if (ev.minCoeff() < -1e-12 * norm) {
        throw ValidationError("diffusion", "matrix is not positive semidefinite");
    }
    ev = ev.cwiseMax(0.0).cwiseSqrt();
    const Matrix &u = solver.eigenvectors();
    Matrix b = u * ev.asDiagonal() * u.transpose();
    return 0.5 * (b + b.transpose());
}

Matrix noise_matrix(const LinearModel &model) { return psd_sqrt(model.diffusion()); }

EnsembleEstimate simulate(const LinearModel &model, const SimulationConfig &config) {
    config.validate();
    const StabilityInfo info = stability(LinearModel(model.modes(), model.drift(), model.diffusion()));
    if (!info.stable) {
        std::ostringstream os;
        os << "simulate: drift is not stable (max real eigenvalue " << info.max_real_eigenvalue
           << ")";
        throw StabilityError(os.str(), info.max_real_eigenvalue);
    }

    std::vector<std::string> warnings;
    double drift_norm = model.drift().operatorNorm();
    if (model.periodic()) {
        drift_norm += model.periodic()->cos_part.operatorNorm() +
                      model.periodic()->sin_part.operatorNorm();
    }
    if (config.dt * drift_norm > 0.1) {
        std::ostringstream os;
        os << "dt * ||A|| = " << config.dt * drift_norm << " exceeds 0.1";
        warnings.push_back(os.str());
    }
    if (model.periodic() && config.dt * model.periodic()->frequency > 0.2) {
        std::ostringstream os;
        os << "dt resolves the drift modulation with fewer than ~30 steps per period";
        warnings.push_back(os.str());
    }
    const double relaxation = 1.0 / std::abs(info.max_real_eigenvalue);
    if (config.burn_in < 5.0 * relaxation) {
        std::ostringstream os;
        os << "burn_in " << config.burn_in << " is shorter than 5 relaxation times ("
           << 5.0 * relaxation << ")";
        warnings.push_back(os.str());
    }
    if (config.n_trajectories < 2) {
        warnings.emplace_back("fewer than two trajectories, standard errors unavailable");
    }

    const Eigen::Index dim = model.drift().rows();
    const std::size_t burn_steps = step_count(config.burn_in, config.dt);
    const std::size_t sample_steps = step_count(config.sample_duration, config.dt);
    const std::size_t recorded = sample_steps / config.sample_stride;
    const bool periodic = model.time_dependent();
    const std::optional<PeriodicDrift> &modulation = model.periodic();

    Stepper exact;
    Matrix em_noise;
    if (periodic) {
        em_noise = noise_matrix(model) * std::sqrt(config.dt);
    } else {
        exact = exact_stepper(model.drift(), model.diffusion(), config.dt);
    }

    std::vector<Matrix> averages(config.n_trajectories);

    auto run_trajectory = [&](std::size_t k) {
        std::mt19937_64 engine = trajectory_engine(config.seed, k);
        std::normal_distribution<double> normal(0.0, 1.0);
        Vector x = Vector::Zero(dim);
        Vector next(dim);
        Vector z(dim);
        Matrix a_t(dim, dim);
        Matrix acc = Matrix::Zero(dim, dim);
        const std::size_t total = burn_steps + sample_steps;
        for (std::size_t step = 0; step < total; ++step) {
            for (Eigen::Index r = 0; r < dim; ++r) {
                z[r] = normal(engine);
            }
            if (periodic) {
                const double phase = modulation->frequency * static_cast<double>(step) * config.dt;
                a_t.noalias() = model.drift() + std::cos(phase) * modulation->cos_part +
                                std::sin(phase) * modulation->sin_part;
                next.noalias() = x + config.dt * (a_t * x);
                next.noalias() += em_noise * z;
            } else {
                next.noalias() = exact.phi * x;
                next.noalias() += exact.noise * z;
            }
            x.swap(next);
            if (step >= burn_steps) {
                const std::size_t offset = step - burn_steps + 1;
                if (offset % config.sample_stride == 0) {
                    acc.noalias() += x * x.transpose();
                }
            }
        }
        averages[k] = acc / static_cast<double>(recorded);
    };

    unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(config.n_trajectories)));
    if (workers == 1) {
        for (std::size_t k = 0; k < config.n_trajectories; ++k) {
            run_trajectory(k);
        }
    } else {
        std::atomic<std::size_t> next_index{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next_index.fetch_add(1); k < config.n_trajectories;
                     k = next_index.fetch_add(1)) {
                    run_trajectory(k);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    const auto count = static_cast<double>(config.n_trajectories);
    Matrix mean = Matrix::Zero(dim, dim);
    for (const Matrix &m : averages) {
        mean += m;
    }
    mean /= count;
    mean = 0.5 * (mean + mean.transpose()).eval();

    Matrix se(dim, dim);
    if (config.n_trajectories < 2) {
        se.setConstant(std::numeric_limits<double>::quiet_NaN());
    } else {
        Matrix sq = Matrix::Zero(dim, dim);
        for (const Matrix &m : averages) {
            const Matrix sym = 0.5 * (m + m.transpose());
            sq += (sym - mean).cwiseAbs2();
        }
        se = (sq / (count - 1.0) / count).cwiseSqrt();
    }

    return EnsembleEstimate{CovarianceMatrix(model.modes(), std::move(mean)), std::move(se),
                            recorded * config.n_trajectories, config.n_trajectories,
                            std::move(warnings)};
}

ValidationReport compare_to_reference(EnsembleEstimate estimate, const Matrix &reference,
                                      double z_limit) {
    const Eigen::Index dim = estimate.covariance.values().rows();
    if (reference.rows() != dim || reference.cols() != dim) {
        throw ValidationError("reference", "dimension does not match the estimate");
    }
    ValidationReport report{std::move(estimate), reference, Matrix(), 0.0, z_limit, false, false};
    const Matrix &est = report.estimate.covariance.values();
    const Matrix &se = report.estimate.standard_errors;
    report.insufficient_statistics = report.estimate.trajectories < 2;
    report.z_scores.resize(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            const double diff = est(r, c) - reference(r, c);
            double z = std::numeric_limits<double>::quiet_NaN();
            if (std::isfinite(se(r, c))) {
                if (se(r, c) > 0.0) {
                    z = diff / se(r, c);
                } else {
                    z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
                }
            }
            report.z_scores(r, c) = z;
            if (!std::isnan(z)) {
                report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
            }
        }
    }
    report.pass = !report.insufficient_statistics && report.max_abs_z <= z_limit;
    return report;
}

} // namespace cvsteer
