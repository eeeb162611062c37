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

#include "doctest.h"

#include <cmath>

#include "gkpforge/error.hpp"
#include "gkpforge/optimizer.hpp"

using namespace gkpforge;

TEST_CASE("vacuum target is reached from a random start") {
    OptimizerConfig cfg;
    cfg.trials = 2;
    cfg.max_iters = 50;
    cfg.rng_seed = 3;
    cfg.early_stop_infidelity = 1e-6;
    const OptimizationRecord rec = optimize(FockVector::vacuum(12), 1, cfg);
    CHECK(rec.best_fidelity >= 1.0 - 1e-4);
    CHECK(rec.trials.size() == 2);
}

TEST_CASE("traces and reduction") {
    OptimizerConfig cfg;
    cfg.trials = 3;
    cfg.max_iters = 120;
    cfg.rng_seed = 42;
    const FockVector target = target_state({LogicalLabel::Zero, 0.4, 20}, 0.05);
    const OptimizationRecord rec = optimize(target, 3, cfg);
    double best = 0.0;
    for (const TrialResult &t : rec.trials) {
        CHECK_FALSE(t.trace.empty());
        for (std::size_t i = 1; i < t.trace.size(); ++i) {
            CHECK(t.trace[i].best_infidelity <= t.trace[i - 1].best_infidelity);
        }
        CHECK(t.best_fidelity == doctest::Approx(1.0 - t.trace.back().best_infidelity));
        CHECK(t.seed == (42u ^ static_cast<std::uint64_t>(t.index)));
        best = std::max(best, t.best_fidelity);
    }
    CHECK(rec.best_fidelity == best);
    CHECK(rec.target_cutoff == 20);
    CHECK(rec.best_params.cutoff == 20 + cfg.working_margin);
    CHECK(rec.best_params.blocks.size() == 3);

    // Winner re-evaluates to the recorded fidelity.
    CircuitEvaluator evaluator(rec.best_params.cutoff, cfg.guard_band);
    const double again =
        evaluator.evaluate(rec.best_params.flatten(), target.resized(rec.best_params.cutoff).amplitudes(), {});
    CHECK(again == doctest::Approx(rec.best_fidelity).epsilon(1e-12));
}

TEST_CASE("reproducibility") {
    OptimizerConfig cfg;
    cfg.trials = 3;
    cfg.max_iters = 60;
    cfg.rng_seed = 9;
    const FockVector target = target_state({LogicalLabel::Zero, 0.45, 16}, 0.05);
    const OptimizationRecord a = optimize(target, 2, cfg);
    const OptimizationRecord b = optimize(target, 2, cfg);
    CHECK(a.best_fidelity == b.best_fidelity);
    CHECK(a.best_params.blocks == b.best_params.blocks);

    cfg.threads = 3;
    const OptimizationRecord c = optimize(target, 2, cfg);
    CHECK(std::abs(c.best_fidelity - a.best_fidelity) < 1e-9);
    CHECK(c.best_trial == a.best_trial);
}

TEST_CASE("configuration validation") {
    OptimizerConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.step_size = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.init_scale.k = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK_THROWS_AS(optimize(FockVector::vacuum(4), 0, OptimizerConfig{}), Error);
    CHECK_THROWS_AS(optimize(FockVector(Eigen::VectorXcd::Ones(4)), 1, OptimizerConfig{}), Error);
}

TEST_CASE("initial parameters follow the configured ranges") {
    const InitScale scale{0.3, 0.2, 0.1, 0.05};
    const std::vector<double> theta = initial_parameters(200, scale, 5);
    const double widths[] = {0.3, 0.2, 0.1, 0.05};
    for (std::size_t j = 0; j < theta.size(); ++j) {
        CHECK(std::abs(theta[j]) <= widths[j % 4]);
    }
    CHECK(initial_parameters(3, scale, 5) == initial_parameters(3, scale, 5));
    CHECK(initial_parameters(3, scale, 5) != initial_parameters(3, scale, 6));
}

TEST_CASE("cutoff selection") {
    const int m = select_cutoff(0.3);
    CHECK(m >= 20);
    CHECK(m <= 45);
    CHECK(select_cutoff(0.35) < select_cutoff(0.12));
    int previous = 1 << 30;
    for (double delta : {0.08, 0.12, 0.2, 0.3, 0.4}) {
        const int value = select_cutoff(delta);
        CHECK(value <= previous);
        previous = value;
    }
    CHECK_THROWS_AS(select_cutoff(0.01), Error);
    CHECK_THROWS_AS(select_cutoff(0.08, LogicalLabel::Zero, 100), Error);
}

TEST_CASE("leakage validation") {
    CircuitParams zero;
    zero.cutoff = 20;
    zero.blocks.assign(2, {});
    CHECK(validate_leakage(zero, 10).retained == doctest::Approx(1.0));
    CHECK(validate_leakage(zero, 10).pass());

    CircuitParams big;
    big.cutoff = 20;
    big.blocks = {{6.0, 0, 0, 0}};
    const LeakageReport leak = validate_leakage(big, 40);
    CHECK(leak.retained < 0.996);
    CHECK_FALSE(leak.pass());
    // Poisson mass of |alpha|^2 = 18 below n = 20.
    double poisson = 0.0;
    double term = std::exp(-18.0);
    for (int n = 0; n < 20; ++n) {
        poisson += term;
        term *= 18.0 / (n + 1);
    }
    CHECK(leak.retained == doctest::Approx(poisson).epsilon(1e-6));
    CHECK_THROWS_AS(validate_leakage(zero, 5), Error);
}

TEST_CASE("schedules") {
    CHECK(default_blocks(0.3) == 15);
    CHECK(default_blocks(0.2) == 30);
    CHECK(default_blocks(0.12) == 60);
    CHECK(default_trials(0.3) == 10);
    CHECK(default_trials(0.12) == 30);
}
