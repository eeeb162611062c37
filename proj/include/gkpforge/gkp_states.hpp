// Copyright 2026 The gkpforge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "gkpforge/fock.hpp"

namespace gkpforge {

inline const double kSqrtPi = std::sqrt(std::numbers::pi);

/// Default cutoff-too-small gate: probability allowed above the cutoff.
inline constexpr double kDefaultMaxLeakage = 0.005;

enum class LogicalLabel { Zero, One, H };

LogicalLabel parse_label(std::string_view text);
std::string_view label_name(LogicalLabel label);

/// Approximate square-lattice GKP target: Gaussian peaks of width delta at
/// (2n + mu) sqrt(pi) under an envelope exp(-delta^2 x^2 / 2).
struct GkpTargetSpec {
    LogicalLabel mu = LogicalLabel::Zero;
    double delta = 0.3;
    int cutoff = 40;

    void validate() const;
};

/// Controls the Hermite projection; only the quadrature resolution is exposed.
struct ProjectionOptions {
    /// 0 selects min(0.01, delta / 10).
    double max_spacing = 0.0;
};

/// Normalized analytic position wavefunction of the (untruncated) target.
Complex analytic_wavefunction(double delta, LogicalLabel mu, double x);

/// First `count` Fock coefficients of the normalized untruncated target.
Eigen::VectorXcd target_coefficients(double delta, LogicalLabel mu, int count, const ProjectionOptions &opts = {});

/// Probability the untruncated target carries at or above `spec.cutoff`.
double target_leakage(const GkpTargetSpec &spec, const ProjectionOptions &opts = {});

/// Truncated and renormalized target. Throws CutoffTooSmallError when the
/// discarded probability exceeds `max_leakage`.
FockVector target_state(const GkpTargetSpec &spec, double max_leakage = kDefaultMaxLeakage,
                        const ProjectionOptions &opts = {});

/// Smallest cutoff whose leakage does not exceed `tol`.
int converged_cutoff(double delta, LogicalLabel mu, double tol, int cap = 4000, const ProjectionOptions &opts = {});

double squeezing_db(double delta);
double delta_from_db(double s_db);

/// Periodic, envelope-free (twirled) model; never materialized as a state.
struct TwirledModel {
    double delta = 0.32;
};

/// 1 - erf(bound / delta)^2.
double twirled_error_probability(const TwirledModel &model, double bound = kSqrtPi / 6.0);
/// Same quantity from one-cell quadrature of the periodic Gaussian comb.
double twirled_error_probability_quadrature(const TwirledModel &model, double bound = kSqrtPi / 6.0);

/// Squeezing threshold of the concatenated GKP-surface code (9.9 dB, delta = 0.32).
inline constexpr double kThresholdSqueezingDb = 9.9;
inline constexpr double kThresholdDelta = 0.32;
/// Twirled error probability at kThresholdDelta (about 0.347).
double threshold_error_probability();

} // namespace gkpforge
