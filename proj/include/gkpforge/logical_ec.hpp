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

#include <array>
#include <cstdint>
#include <numbers>

#include "gkpforge/error_metrics.hpp"
#include "gkpforge/fock.hpp"

namespace gkpforge {

/// Encoded phase gate S(s) realized as R(theta), S(r), R(theta - pi/2) in time
/// order, with s = 2 sinh r and cos(theta) = 1 / sqrt(1 + e^{2r}).
struct PhaseGateDecomposition {
    double s = 0.0;
    double r = 0.0;
    double theta = 0.0;
};

PhaseGateDecomposition phase_gate_params(double s);

/// Quadrature transfer matrix [[a, b], [c, d]] of a Gaussian unitary U:
/// U^dag (q, p) U = (a q + b p, c q + d p).
using Symplectic = std::array<std::array<double, 2>, 2>;
Symplectic phase_gate_symplectic(const PhaseGateDecomposition &decomposition);

inline constexpr double kFourierAngle = std::numbers::pi / 2.0;

enum class LogicalGateKind { Xbar, Zbar, Fourier, Sbar };

struct LogicalGate {
    LogicalGateKind kind = LogicalGateKind::Xbar;
    /// Shear strength for Sbar.
    double s = 0.0;
    /// Rotation angle used for Fourier; the quarter period maps q to p.
    double angle = kFourierAngle;
};

FockVector apply_logical(const FockVector &state, const LogicalGate &gate);

/// Representative of y modulo sqrt(pi) in (-sqrt(pi)/2, sqrt(pi)/2].
double fold_centered(double y);
/// Correction displacement for a momentum outcome p: fold_centered(-p).
double ec_correction(double p);

struct EcConfig {
    /// Momentum-grid spacing, also the width of the projected grid cell.
    double momentum_spacing = 0.01;
    /// Momentum-grid extent; 0 selects sqrt(2 ancilla cutoff) + 5.
    double extent = 0.0;
    /// Allowed drift of the integrated marginal density from 1.
    double normalization_tol = 1e-4;
    int tensor_cap = kDefaultTensorCap;
    ErrorProbabilityConfig error;
};

struct EcOutcome {
    double p_sample = 0.0;
    double correction = 0.0;
    FockVector post_state{1};
    double p_error_before = 0.0;
    double p_error_after = 0.0;
    double marginal_norm = 0.0;
};

/// exp(i q_anc p_data) on data (slow index) tensor ancilla; afterwards
/// p_anc carries p_anc + p_data and q_data carries q_data - q_anc.
FockVector inverse_sum(const FockVector &data, const FockVector &ancilla, int tensor_cap = kDefaultTensorCap);

/// One Steane-type momentum correction round: inverse SUM, homodyne of the
/// ancilla momentum (sampled with `rng_seed`), grid-cell projection and the
/// displacement Z(-p mod sqrt(pi)) on the data.
EcOutcome ec_round(const FockVector &data, const FockVector &ancilla, std::uint64_t rng_seed,
                   const EcConfig &cfg = {});

} // namespace gkpforge
