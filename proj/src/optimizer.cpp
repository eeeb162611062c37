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

#include "gkpforge/optimizer.hpp"
#include "gkpforge/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace gkpforge {

namespace {

double uniform_unit(std::mt19937_64 &rng) {
    // 53 random bits; std::uniform_real_distribution is not portable across
    // standard libraries and the starting points must be.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TrialResult run_trial(const Eigen::VectorXcd &target, int blocks, const OptimizerConfig &cfg, int index) {
    TrialResult result;
    result.index = index;
    result.seed = trial_seed(cfg.rng_seed, index);
    std::vector<double> theta = initial_parameters(blocks, cfg.init_scale, result.seed);
    const std::size_t count = theta.size();
    std::vector<double> grad(count), m(count, 0.0), v(count, 0.0);

    CircuitEvaluator evaluator(static_cast<int>(target.size()), cfg.guard_band);
    double best = 2.0;
    result.best_theta = theta;
    result.trace.reserve(static_cast<std::size_t>(cfg.max_iters));
    double beta1_t = 1.0;
    double beta2_t = 1.0;
    double window_start_best = best;
    int window_start = 0;

    for (int it = 0; it < cfg.max_iters; ++it) {
        const double fid = evaluator.evaluate(theta, target, grad);
        const double infid = 1.0 - fid;
        const bool finite = std::isfinite(infid) && std::all_of(grad.begin(), grad.end(), [](double g) {
            return std::isfinite(g);
        });
        if (!finite) {
            result.aborted = true;
            result.note = "non-finite loss at iteration " + std::to_string(it);
            break;
        }
        if (infid < best) {
            best = infid;
            result.best_theta = theta;
        }
        result.trace.push_back({it, infid, best});
        result.iterations = it + 1;
        if (best <= cfg.early_stop_infidelity) {
            break;
        }
        if (cfg.plateau_window > 0 && it - window_start >= cfg.plateau_window) {
            if (window_start_best - best <= cfg.plateau_tol) {
                break;
            }
            window_start = it;
            window_start_best = best;
        }
        if (it == 0) {
            window_start_best = best;
        }

        const double step =
            cfg.step_size * std::pow(cfg.final_step_ratio, static_cast<double>(it) / cfg.max_iters);
        beta1_t *= cfg.beta1;
        beta2_t *= cfg.beta2;
        for (std::size_t j = 0; j < count; ++j) {
            const double g = -grad[j]; // descend on 1 - F
            m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g;
            v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g * g;
            const double m_hat = m[j] / (1.0 - beta1_t);
            const double v_hat = v[j] / (1.0 - beta2_t);
            const double scale = j % kParamsPerBlock == 2 ? cfg.kerr_step_scale : 1.0;
            theta[j] -= scale * step * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
        for (std::size_t j = 3; j < count; j += kParamsPerBlock) {
            theta[j] = std::clamp(theta[j], -kMaxSqueezing, kMaxSqueezing);
        }
    }
    result.best_fidelity = 1.0 - best;
    if (best > 1.0) {
        result.best_fidelity = 0.0;
    }
    return result;
}

int resolve_threads(int requested, int trials) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(n, 1, trials);
}

} // namespace

void OptimizerConfig::validate() const {
    require(trials >= 1, ErrorCode::Configuration, "trials must be >= 1");
    require(max_iters >= 1, ErrorCode::Configuration, "max_iters must be >= 1");
    require(step_size > 0.0 && kerr_step_scale > 0.0 && final_step_ratio > 0.0, ErrorCode::Configuration, "step sizes must be positive");
    require(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0, ErrorCode::Configuration,
            "Adam betas must lie in [0, 1)");
    require(init_scale.c >= 0.0 && init_scale.d >= 0.0 && init_scale.k >= 0.0 && init_scale.r >= 0.0,
            ErrorCode::Configuration, "init_scale components must be >= 0");
    require(working_margin >= 0 && guard_band >= 0, ErrorCode::Configuration,
            "working_margin and guard_band must be >= 0");
    require(plateau_window >= 0 && threads >= 0, ErrorCode::Configuration, "negative plateau window or threads");
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) { return seed ^ static_cast<std::uint64_t>(trial); }

std::vector<double> initial_parameters(int blocks, const InitScale &scale, std::uint64_t seed) {
    require(blocks >= 1, ErrorCode::InvalidArgument, "blocks must be >= 1");
    std::mt19937_64 rng(seed);
    const double widths[kParamsPerBlock] = {scale.c, scale.d, scale.k, scale.r};
    std::vector<double> theta(static_cast<std::size_t>(blocks) * kParamsPerBlock);
    for (std::size_t j = 0; j < theta.size(); ++j) {
        theta[j] = widths[j % kParamsPerBlock] * (2.0 * uniform_unit(rng) - 1.0);
    }
    return theta;
}

OptimizationRecord optimize(const FockVector &target, int blocks, const OptimizerConfig &cfg) {
    cfg.validate();
    require(blocks >= 1, ErrorCode::InvalidArgument, "blocks must be >= 1");
    require(target.is_normalized(1e-8), ErrorCode::InvalidArgument, "optimization target must be normalized");
    const auto start = std::chrono::steady_clock::now();

    const int working_cutoff = target.cutoff() + cfg.working_margin;
    const Eigen::VectorXcd padded = target.resized(working_cutoff).amplitudes();
    // Build the shared gate caches before any worker starts.
    for (GateKind kind : kBlockGates) {
        (void)gate(kind, working_cutoff + cfg.guard_band);
    }

    OptimizationRecord record;
    record.trials.resize(static_cast<std::size_t>(cfg.trials));
    const int workers = resolve_threads(cfg.threads, cfg.trials);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int t = next++; t < cfg.trials; t = next++) {
            record.trials[static_cast<std::size_t>(t)] = run_trial(padded, blocks, cfg, t);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    for (const TrialResult &trial : record.trials) {
        if (record.best_trial < 0 || trial.best_fidelity > record.best_fidelity) {
            record.best_trial = trial.index;
            record.best_fidelity = trial.best_fidelity;
        }
    }
    const TrialResult &winner = record.trials[static_cast<std::size_t>(record.best_trial)];
    record.target_cutoff = target.cutoff();
    record.best_params.cutoff = working_cutoff;
    record.best_params.seed = cfg.rng_seed;
    record.best_params.assign(winner.best_theta);
    record.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

OptimizationRecord optimize(const GkpTargetSpec &spec, int blocks, const OptimizerConfig &cfg, double max_leakage) {
    const FockVector target = target_state(spec, max_leakage);
    OptimizationRecord record = optimize(target, blocks, cfg);
    record.best_params.target_delta = spec.delta;
    record.best_params.target = spec.mu;
    return record;
}

int select_cutoff(double delta, LogicalLabel mu, int cap) {
    require(delta >= 0.05 && delta <= 0.5, ErrorCode::InvalidArgument, "select_cutoff needs 0.05 <= delta <= 0.5");
    require(cap >= 2, ErrorCode::InvalidArgument, "cutoff search cap must be >= 2");
    const int count = cap + kCutoffGuardSteps + 2;
    const Eigen::VectorXcd c = target_coefficients(delta, mu, count);
    // cumulative[m] = weight of |0>..|m-1>; F(m, m+1) of renormalized truncations
    // is cumulative[m] / cumulative[m + 1].
    std::vector<double> cumulative(static_cast<std::size_t>(count) + 1, 0.0);
    for (int n = 0; n < count; ++n) {
        cumulative[static_cast<std::size_t>(n) + 1] = cumulative[static_cast<std::size_t>(n)] + std::norm(c[n]);
    }
    auto close = [&](int m) {
        const double next = cumulative[static_cast<std::size_t>(m) + 1];
        return next > 0.0 && cumulative[static_cast<std::size_t>(m)] / next > kCutoffFidelity;
    };
    for (int m = 1; m <= cap; ++m) {
        bool stable = true;
        for (int step = 0; step <= kCutoffGuardSteps && stable; ++step) {
            stable = close(m + step);
        }
        if (stable) {
            return m;
        }
    }
    fail(ErrorCode::ResourceLimit, "cutoff search exceeded the cap of " + std::to_string(cap));
}

LeakageReport validate_leakage(const CircuitParams &params, int margin) {
    params.validate();
    require(margin >= 10, ErrorCode::InvalidArgument, "leakage margin must be >= 10");
    const FockVector wide = forward(params.blocks, params.cutoff + margin);
    return {wide.weight_below(params.cutoff), params.cutoff, margin};
}

int default_blocks(double delta) {
    if (delta >= 0.25) {
        return 15;
    }
    return delta >= 0.15 ? 30 : 60;
}

int default_trials(double delta) { return delta >= 0.2 ? 10 : 30; }

} // namespace gkpforge
