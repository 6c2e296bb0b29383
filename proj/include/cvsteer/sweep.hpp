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
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cvsteer/lyapunov.hpp"

namespace cvsteer {

inline constexpr const char *kVersion = "0.1.0";

enum class Spacing { linear, log };

struct SweepRange {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
    Spacing spacing = Spacing::linear;

    void validate() const;
    [[nodiscard]] std::vector<double> grid() const;
};

/**
 * A one-parameter scan.
 *
 * Quantity names understood by `outputs`:
 *   var_X<m>, var_P<m>            quadrature variances of mode m
 *   corr_<U><m><W><k>             symmetrized moment, e.g. corr_XaPb
 *   E_<i><j>                      Reid parameter, mode i steered by mode j
 *   duan_simon, h_opt             optimized Duan-Simon parameter and gain
 *   lambda, log_negativity        partial-transpose invariant and E_N
 *   corr, steer_threshold, ent_threshold, steer_margin, ent_margin
 *                                 |<X_i O_j>| against the steering and
 *                                 entanglement thresholds built from the
 *                                 variances, and corr minus each threshold
 *   stability_margin              -max Re(eig A), scaled by gamma_ref
 *   symplectic_min                smallest symplectic eigenvalue
 * The pair (i, j) for the pair quantities is (a, b) for models containing
 * both, and (c, b) for reduced_b. A `_<i><j>` suffix selects another pair,
 * e.g. lambda_bc.
 */
struct SweepSpec {
    ModelKind model = ModelKind::reduced_a;
    std::string parameter = "C_a";
    SweepRange range;
    SystemParams fixed;
    std::vector<std::string> outputs;
    /// Rates are in units of gamma_ref; rate-valued output columns are
    /// multiplied by it.
    double gamma_ref = 1.0;

    void validate() const;
};

struct SweepRow {
    double swept = 0.0;
    bool stable = false;
    std::vector<std::optional<double>> values; ///< one per non-leading column
};

struct Table {
    std::vector<std::string> metadata; ///< emitted as "# " lines
    std::vector<std::string> columns;  ///< after the swept column and `stable`
    std::string swept_name;
    std::vector<SweepRow> rows;

    /// Index into SweepRow::values; throws ValidationError if absent.
    [[nodiscard]] std::size_t column_index(const std::string &name) const;
    [[nodiscard]] std::vector<std::optional<double>> column(const std::string &name) const;
};

/// CSV with a `#` metadata block, header row, 12 significant digits, LF
/// line endings. Unstable rows have empty quantity cells.
void write_csv(const Table &table, std::ostream &out);
std::string to_csv(const Table &table);

/**
 * Evaluates every grid point through the Lyapunov path and, where a closed
 * form exists for the quantity and the point satisfies its preconditions,
 * through the analytic path. Columns are `q`, plus `q_analytic` and
 * `q_absdiff` for quantities with a closed form for this model kind.
 */
Table run_sweep(const SweepSpec &spec);

/// Whether `quantity` has a closed-form counterpart for `kind`.
bool has_analytic(const std::string &quantity, ModelKind kind);

/// Value of a quantity on a solved covariance. Throws ValidationError for
/// unknown names or modes the covariance does not contain.
double evaluate_quantity(const std::string &quantity, ModelKind kind, const CovarianceMatrix &v,
                         const StabilityInfo &info, double gamma_ref = 1.0);

/// Closed-form value, or nullopt if the closed form does not apply here.
std::optional<double> analytic_quantity(const std::string &quantity, ModelKind kind,
                                        const SystemParams &params);

/// Covariance assembled from the closed-form moments, when applicable.
std::optional<CovarianceMatrix> analytic_covariance(ModelKind kind, const SystemParams &params);

struct FigureSeries {
    std::string name; ///< file stem, e.g. fig2_a_gm0.25
    SweepSpec spec;
    Table table;
};

std::vector<std::string> figure_ids();

/// Regenerates one figure's data: 2a_a, 2a_b, 2_a, 2_b, 3_a, 3_b, 4, 5, 6.
/// Each figure is 200 linearly spaced points per curve; throws
/// ValidationError for unknown ids.
std::vector<FigureSeries> reproduce_figure(const std::string &id);

} // namespace cvsteer
