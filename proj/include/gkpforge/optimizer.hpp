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

#include <cstdint>
#include <string>
#include <vector>

#include "gkpforge/circuit.hpp"
#include "gkpforge/gkp_states.hpp"

namespace gkpforge {

/// Uniform half-widths of the random starting point.
struct InitScale {
    double c = 0.3;
    double d = 0.3;
    double k = 0.1;
    double r = 0.3;
};

struct OptimizerConfig {
    int trials = 10;
    int max_iters = 2000;
    double step_size = 0.01;
    /// Step multiplier for the Kerr coordinates. The Kerr phase k n^2 moves
    /// n^2 times faster than the other generators at photon number n, while
    /// Adam steps are nearly scale-free per coordinate.
    double kerr_step_scale = 0.03;
    /// The step decays geometrically from step_size to
    /// step_size * final_step_ratio over max_iters (1 keeps it constant).
    double final_step_ratio = 1.0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    InitScale init_scale;
    std::uint64_t rng_seed = 0;
    /// Stop a trial once its infidelity reaches this value.
    double early_stop_infidelity = 1e-3;
    /// Stop a trial when the best infidelity has not dropped by more than
    /// `plateau_tol` during the last `plateau_window` iterations (0 disables).
    int plateau_window = 200;
    double plateau_tol = 1e-6;
    /// The loss is evaluated in a window of target cutoff + working_margin
    /// levels (target zero-padded) with gates built `guard_band` levels wider
    /// and amplitude above the window discarded after every gate. Weight that
    /// reaches the window edge then costs fidelity instead of reflecting off
    /// the truncation boundary. guard_band = 0 restores plain truncation.
    int working_margin = 10;
    int guard_band = 20;
    /// Worker threads for the trials; 0 uses the hardware concurrency.
    int threads = 1;

    void validate() const;
};

struct TraceRow {
    int iteration = 0;
    double infidelity = 0.0;
    double best_infidelity = 0.0; // best so far within the trial
};

struct TrialResult {
    int index = 0;
    std::uint64_t seed = 0;
    double best_fidelity = 0.0;
    std::vector<double> best_theta;
    std::vector<TraceRow> trace;
    int iterations = 0;
    bool aborted = false; // a non-finite loss ended the trial
    std::string note;
};

struct OptimizationRecord {
    /// best_params.cutoff is the optimization window (target cutoff + margin).
    CircuitParams best_params;
    int target_cutoff = 0;
    double best_fidelity = 0.0;
    int best_trial = -1;
    std::vector<TrialResult> trials;
    double wallclock_seconds = 0.0;
};

/// Seed of trial t derived from the configured seed.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// Random starting parameters for one trial.
std::vector<double> initial_parameters(int blocks, const InitScale &scale, std::uint64_t seed);

/// Multi-start Adam descent on 1 - F. Deterministic for a given rng_seed; the
/// winner is the largest fidelity, ties going to the lower trial index.
OptimizationRecord optimize(const FockVector &target, int blocks, const OptimizerConfig &cfg);

/// Builds the target from `spec` and fills the target metadata of the record.
OptimizationRecord optimize(const GkpTargetSpec &spec, int blocks, const OptimizerConfig &cfg,
                            double max_leakage = kDefaultMaxLeakage);

inline constexpr int kCutoffSearchCap = 400;
inline constexpr double kCutoffFidelity = 0.999;
inline constexpr int kCutoffGuardSteps = 5;

/// Smallest m with F(target at m, target at m+1) > 0.999 that stays above
/// 0.999 for the next five increments.
int select_cutoff(double delta, LogicalLabel mu = LogicalLabel::Zero, int cap = kCutoffSearchCap);

inline constexpr double kRetainedThreshold = 0.996;

struct LeakageReport {
    double retained = 0.0; // probability within the original cutoff
    int cutoff = 0;
    int margin = 0;
    [[nodiscard]] bool pass() const noexcept { return retained >= kRetainedThreshold; }
};

/// Re-runs the circuit at cutoff + margin and measures what stays below cutoff.
LeakageReport validate_leakage(const CircuitParams &params, int margin = 30);

int default_blocks(double delta);
int default_trials(double delta);

} // namespace gkpforge
