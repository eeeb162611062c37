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

#include "gkpforge/fock.hpp"
#include "gkpforge/gkp_states.hpp"

namespace gkpforge {

/// Settings for the shift-error probability of a state.
struct ErrorProbabilityConfig {
    /// Correctable shift half-width a; both quadratures are integrated over [-a, a].
    double bound = kSqrtPi / 6.0;
    /// Gauss-Legendre nodes per axis; the result is accepted only if doubling
    /// them moves it by less than `convergence_tol`.
    int quad_nodes = 64;
    double convergence_tol = 1e-6;
    /// Lattice half-width s_max of the Zak sum; 0 derives it from `extent`.
    int lattice_halfwidth = 0;
    /// Position support of the state; 0 selects sqrt(2 cutoff) + 5.
    double extent = 0.0;
    /// Ideal logical state the shifts are measured from: |0> (lattice at even
    /// multiples of sqrt(pi)) or |1> (odd multiples).
    LogicalLabel reference = LogicalLabel::Zero;

    void validate() const;
};

struct QualityReport {
    double fidelity = 0.0;
    double p_error = 0.0;
    double squeezing_db = 0.0;
    /// Probability pushed above the working cutoff (1 - retained).
    double leakage = 0.0;
    double delta = 0.0;
};

/// |<a|b>|^2; the shorter vector is zero-padded.
double fidelity(const FockVector &a, const FockVector &b);

/// <u, v | psi> against the ideal |0> lattice shifted by u in position and v in
/// momentum: pi^{-1/4} sum_s exp(2 i s sqrt(pi) v) psi(2 s sqrt(pi) + u).
/// Arguments outside the canonical cell are folded back with the lattice phase.
Complex zak_overlap(const FockVector &state, double u, double v, const ErrorProbabilityConfig &cfg = {});

/// Probability mass of |<u,v|psi>|^2 over [u_lo, u_hi] x [v_lo, v_hi] using
/// `nodes` Gauss-Legendre points per axis (no convergence check).
double shift_probability(const FockVector &state, double u_lo, double u_hi, double v_lo, double v_hi, int nodes,
                         const ErrorProbabilityConfig &cfg = {});

/// 1 - P(|u| < a, |v| < a) with the doubling convergence gate.
double error_probability(const FockVector &state, const ErrorProbabilityConfig &cfg = {});

/// Probability that the position shift lies in [-a, a], from the position
/// density folded onto the lattice (the u marginal of the shift distribution).
double position_shift_marginal(const FockVector &state, const ErrorProbabilityConfig &cfg = {});

} // namespace gkpforge
