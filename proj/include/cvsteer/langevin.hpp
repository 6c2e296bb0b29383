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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cvsteer/lyapunov.hpp"

namespace cvsteer {

struct SimulationConfig {
    double dt = 1e-2;
    double burn_in = 20.0;
    double sample_duration = 200.0;
    std::size_t n_trajectories = 100;
    std::uint64_t seed = 20260101;
    /// Record every `sample_stride`-th step of the sampling window.
    std::size_t sample_stride = 1;
    /// Worker threads; 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;

    void validate() const;
};

struct EnsembleEstimate {
    CovarianceMatrix covariance;
    /// Standard error of each entry from the spread of per-trajectory
    /// time averages. NaN when fewer than two trajectories were run.
    Matrix standard_errors;
    std::size_t effective_samples = 0;
    std::size_t trajectories = 0;
    std::vector<std::string> warnings;
};

/// B with B B^T = D via the symmetric square root. Eigenvalues of D down to
/// -1e-12 ||D|| are clamped to zero; anything lower throws ValidationError.
Matrix noise_matrix(const LinearModel &model);
Matrix psd_sqrt(const Matrix &d);

/**
 * Monte-Carlo estimate of the stationary covariance of dx = A(t) x dt + B dW.
 *
 * Time-independent drift is propagated with the exact one-step Gaussian
 * transition (x <- Phi x + xi, Phi = exp(A dt), Cov xi from Van Loan's
 * block exponential), so there is no dt bias. Periodic drift uses
 * Euler-Maruyama. Each trajectory starts at x = 0, runs `burn_in`, then
 * accumulates x x^T over `sample_duration`. Trajectory k draws from an
 * mt19937_64 seeded by (seed, k); per-trajectory averages are reduced in
 * index order, so results do not depend on the thread count.
 */
EnsembleEstimate simulate(const LinearModel &model, const SimulationConfig &config);

struct ValidationReport {
    EnsembleEstimate estimate;
    Matrix reference;
    Matrix z_scores; ///< (estimate - reference) / SE, NaN where SE is unavailable
    double max_abs_z = 0.0;
    double z_limit = 4.0;
    bool insufficient_statistics = false;
    bool pass = false;
};

/// Compares an estimate against a reference covariance entry by entry.
ValidationReport compare_to_reference(EnsembleEstimate estimate, const Matrix &reference,
                                      double z_limit = 4.0);

} // namespace cvsteer
