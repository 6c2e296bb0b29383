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
#include "cvsteer/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvsteer/errors.hpp"

namespace cvsteer {

namespace {

// Duan-Simon numerator N(h) = s + 2 c h + t h^2.
struct DuanSimonTerms {
    double s = 0.0;
    double c = 0.0;
    double t = 0.0;
};

DuanSimonTerms duan_simon_terms(const CovarianceMatrix &v, Mode i, Mode j, CombinationType type) {
    DuanSimonTerms terms;
    terms.s = v.var_x(i) + v.var_p(i);
    terms.t = v.var_x(j) + v.var_p(j);
    if (type == CombinationType::xp) {
        terms.c = v.corr(i, true, j, false) + v.corr(i, false, j, true);
    } else {
        terms.c = v.corr(i, true, j, true) - v.corr(i, false, j, false);
    }
    return terms;
}

double det2(const Matrix &m, Eigen::Index r, Eigen::Index c) {
    return m(r, c) * m(r + 1, c + 1) - m(r, c + 1) * m(r + 1, c);
}

} // namespace

std::string_view to_string(SteeringClass c) noexcept {
    switch (c) {
    case SteeringClass::none: return "none";
    case SteeringClass::one_way_i_by_j: return "one_way_i_by_j";
    case SteeringClass::one_way_j_by_i: return "one_way_j_by_i";
    case SteeringClass::two_way: return "two_way";
    }
    return "unknown";
}

std::string_view to_string(Quadrature q) noexcept { return q == Quadrature::x ? "X" : "P"; }

std::string_view to_string(CombinationType c) noexcept {
    return c == CombinationType::xp ? "xp" : "xxpp";
}

bool LogNegativityResult::entangled() const noexcept {
    return lambda < kSteeringThreshold - kCriterionTolerance;
}

DirectionalSteering reid_parameter(const CovarianceMatrix &v, Mode i, Mode j) {
    if (i == j) {
        throw ValidationError("mode", "steering needs two distinct modes");
    }
    const double var_xi = v.var_x(i);
    const double var_pi = v.var_p(i);
    const double var_xj = v.var_x(j);
    const double var_pj = v.var_p(j);
    if (!(var_xi > 0.0 && var_pi > 0.0 && var_xj > 0.0 && var_pj > 0.0)) {
        throw ValidationError("covariance", "quadrature variances must be strictly positive");
    }

    const double coef_xx = v.corr(i, true, j, true) / std::sqrt(var_xi * var_xj);
    const double coef_xp = v.corr(i, true, j, false) / std::sqrt(var_xi * var_pj);
    const bool x_pairs_with_p = std::abs(coef_xp) > std::abs(coef_xx);

    // O_j for X_i and O'_j for P_i.
    const bool oj_is_x = !x_pairs_with_p;
    const bool ojp_is_x = x_pairs_with_p;
    const double var_oj = oj_is_x ? var_xj : var_pj;
    const double var_ojp = ojp_is_x ? var_xj : var_pj;
    const double cov_x = v.corr(i, true, j, oj_is_x);
    const double cov_p = v.corr(i, false, j, ojp_is_x);

    const double coef_x = cov_x / std::sqrt(var_xi * var_oj);
    const double coef_p = cov_p / std::sqrt(var_pi * var_ojp);

    DirectionalSteering out;
    out.gains.paired_with_x = oj_is_x ? Quadrature::x : Quadrature::p;
    out.gains.h = -cov_x / var_oj;
    out.gains.h_prime = -cov_p / var_ojp;
    out.value = std::sqrt(std::max(0.0, var_xi * (1.0 - coef_x * coef_x))) *
                std::sqrt(std::max(0.0, var_pi * (1.0 - coef_p * coef_p)));
    return out;
}

SteeringReport reid_steering(const CovarianceMatrix &v, Mode i, Mode j) {
    const DirectionalSteering ij = reid_parameter(v, i, j);
    const DirectionalSteering ji = reid_parameter(v, j, i);
    SteeringReport report;
    report.i = i;
    report.j = j;
    report.e_ij = ij.value;
    report.e_ji = ji.value;
    report.gains_ij = ij.gains;
    report.gains_ji = ji.gains;
    report.classification = classify_steering(ij.value, ji.value);
    return report;
}

double duan_simon_at(const CovarianceMatrix &v, Mode i, Mode j, CombinationType type, double h) {
    const DuanSimonTerms k = duan_simon_terms(v, i, j, type);
    return (k.s + 2.0 * k.c * h + k.t * h * h) / (1.0 + h * h);
}

DuanSimonResult duan_simon(const CovarianceMatrix &v, Mode i, Mode j) {
    if (i == j) {
        throw ValidationError("mode", "entanglement needs two distinct modes");
    }
    const DuanSimonTerms xp = duan_simon_terms(v, i, j, CombinationType::xp);
    const DuanSimonTerms xxpp = duan_simon_terms(v, i, j, CombinationType::xxpp);
    const bool use_xxpp = std::abs(xxpp.c) > std::abs(xp.c);
    const DuanSimonTerms &k = use_xxpp ? xxpp : xp;

    DuanSimonResult out;
    out.combination = use_xxpp ? CombinationType::xxpp : CombinationType::xp;
    if (k.c == 0.0) {
        out.h_opt = 0.0;
        out.value = k.s;
        return out;
    }
    // Stationary points solve c + (t - s) h - c h^2 = 0; this root is the
    // minimum for either sign of c.
    const double diff = k.t - k.s;
    out.h_opt = (diff - std::sqrt(diff * diff + 4.0 * k.c * k.c)) / (2.0 * k.c);
    out.value = (k.s + 2.0 * k.c * out.h_opt + k.t * out.h_opt * out.h_opt) /
                (1.0 + out.h_opt * out.h_opt);
    return out;
}

LogNegativityResult log_negativity(const CovarianceMatrix &v, Mode i, Mode j) {
    const Matrix sub = v.restrict_to(i, j).values();
    const double det_l = det2(sub, 0, 0);
    const double det_k = det2(sub, 2, 2);
    const double det_corr = det2(sub, 0, 2);
    const double det_v = sub.determinant();

    LogNegativityResult out;
    out.sigma = det_l + det_k - 2.0 * det_corr;
    double disc = out.sigma * out.sigma - 4.0 * det_v;
    const double scale = std::max(1.0, out.sigma * out.sigma);
    if (disc < -1e-12 * scale) {
        throw NumericalError("log_negativity: negative discriminant, covariance is not physical");
    }
    disc = std::max(0.0, disc);
    const double inner = std::max(0.0, out.sigma - std::sqrt(disc));
    out.lambda = std::sqrt(0.5 * inner);
    out.log_negativity = out.lambda > 0.0 ? std::max(0.0, -std::log(2.0 * out.lambda))
                                          : std::numeric_limits<double>::infinity();
    return out;
}

EntanglementReport entanglement(const CovarianceMatrix &v, Mode i, Mode j) {
    const DuanSimonResult ds = duan_simon(v, i, j);
    const LogNegativityResult ln = log_negativity(v, i, j);
    return {ds.value, ds.h_opt, ds.combination, ln.lambda, ln.log_negativity};
}

SteeringClass classify_steering(double e_ij, double e_ji) noexcept {
    const bool i_steered = e_ij < kSteeringThreshold - kCriterionTolerance;
    const bool j_steered = e_ji < kSteeringThreshold - kCriterionTolerance;
    if (i_steered && j_steered) return SteeringClass::two_way;
    if (i_steered) return SteeringClass::one_way_i_by_j;
    if (j_steered) return SteeringClass::one_way_j_by_i;
    return SteeringClass::none;
}

} // namespace cvsteer
