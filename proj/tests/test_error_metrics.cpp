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
#include <numbers>

#include "gkpforge/error.hpp"
#include "gkpforge/error_metrics.hpp"
#include "helpers.hpp"

using namespace gkpforge;
using gkpforge::testing::random_state;

TEST_CASE("fidelity") {
    const FockVector psi = random_state(12, 4);
    CHECK(fidelity(psi, psi) == doctest::Approx(1.0));
    CHECK(fidelity(FockVector::vacuum(4), FockVector::number_state(4, 1)) == 0.0);
    const FockVector chi = random_state(12, 5);
    CHECK(fidelity(psi, chi) == doctest::Approx(fidelity(chi, psi)));
    CHECK(fidelity(psi, FockVector(Eigen::VectorXcd(psi.amplitudes() * std::polar(1.0, 0.7)))) ==
          doctest::Approx(1.0));

    for (GateKind kind : {GateKind::X, GateKind::S, GateKind::K}) {
        const auto g = gate(kind, 12);
        CHECK(std::abs(fidelity(g->apply(0.8, psi), g->apply(0.8, chi)) - fidelity(psi, chi)) < 1e-10);
    }
}

TEST_CASE("Zak overlap completeness over the cell") {
    for (int cutoff : {10, 60, 150}) {
        const FockVector psi = random_state(cutoff, static_cast<std::uint64_t>(7 * cutoff));
        const double total = shift_probability(psi, -kSqrtPi, kSqrtPi, -kSqrtPi / 2, kSqrtPi / 2, 160);
        CHECK(std::abs(total - 1.0) < 1e-4);
    }
}

TEST_CASE("Zak overlap values") {
    const Complex vac = zak_overlap(FockVector::vacuum(20), 0.0, 0.0);
    CHECK(vac.real() > 0.0);
    CHECK(std::abs(vac.imag()) < 1e-14);

    const FockVector zero = target_state({LogicalLabel::Zero, 0.15, 400});
    CHECK(std::norm(zak_overlap(zero, 0.0, 0.0)) > 100.0 * std::norm(zak_overlap(zero, kSqrtPi / 3.0, 0.0)));

    // Folding: shifting u by a lattice vector only changes the phase.
    const FockVector psi = random_state(30, 2);
    const Complex base = zak_overlap(psi, 0.4, 0.3);
    const Complex moved = zak_overlap(psi, 0.4 + 2.0 * kSqrtPi, 0.3);
    CHECK(std::abs(moved - std::polar(1.0, -2.0 * kSqrtPi * 0.3) * base) < 1e-10);
    CHECK(std::abs(zak_overlap(psi, 0.4, 0.3 + kSqrtPi) - base) < 1e-10);
}

TEST_CASE("error probability") {
    const FockVector target = target_state({LogicalLabel::Zero, 0.32, converged_cutoff(0.32, LogicalLabel::Zero, 1e-6)});
    const double p = error_probability(target);
    CHECK(std::abs(p - 0.347) < 0.005);

    // Doubling gate: the converged value agrees with a much finer rule.
    const double fine = 1.0 - shift_probability(target, -kSqrtPi / 6, kSqrtPi / 6, -kSqrtPi / 6, kSqrtPi / 6, 512);
    CHECK(std::abs(p - fine) < 1e-6);

    const FockVector rotated(Eigen::VectorXcd(target.amplitudes() * std::polar(1.0, 1.3)));
    CHECK(error_probability(rotated) == doctest::Approx(p).epsilon(1e-12));

    const FockVector one = target_state({LogicalLabel::One, 0.15, 400});
    CHECK(error_probability(one) > 0.9);

    double previous = 0.0;
    for (double delta = 0.1; delta <= 0.4001; delta += 0.05) {
        const FockVector t = target_state({LogicalLabel::Zero, delta, converged_cutoff(delta, LogicalLabel::Zero, 1e-6)});
        const double value = error_probability(t);
        CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("position marginal matches the twirled single-quadrature integral") {
    for (double delta : {0.15, 0.25, 0.3}) {
        const int cutoff = converged_cutoff(delta, LogicalLabel::Zero, 1e-8);
        const FockVector t = target_state({LogicalLabel::Zero, delta, cutoff});
        const double closed = std::erf(kSqrtPi / 6.0 / delta);
        CHECK(std::abs(position_shift_marginal(t) - closed) < 1e-4);
        CHECK(std::abs(position_shift_marginal(t) -
                       shift_probability(t, -kSqrtPi / 6, kSqrtPi / 6, -kSqrtPi / 2, kSqrtPi / 2, 128)) < 1e-8);
    }
}

TEST_CASE("shifts measured from the odd lattice") {
    const int cutoff = 120;
    const FockVector psi = target_state({LogicalLabel::Zero, 0.35, 30}, 0.05).resized(cutoff);
    const FockVector moved = gate(GateKind::X, cutoff)->apply(kSqrtPi, psi);
    ErrorProbabilityConfig odd;
    odd.reference = LogicalLabel::One;
    CHECK(error_probability(moved, odd) == doctest::Approx(error_probability(psi)).epsilon(1e-8));
    CHECK(error_probability(psi, odd) > 0.9);

    const FockVector one = target_state({LogicalLabel::One, 0.2, converged_cutoff(0.2, LogicalLabel::One, 1e-8)});
    CHECK(std::abs(error_probability(one, odd) - twirled_error_probability({0.2})) < 0.01);

    odd.reference = LogicalLabel::H;
    CHECK_THROWS_AS(error_probability(psi, odd), Error);
}

TEST_CASE("configuration checks") {
    const FockVector psi = random_state(50, 1);
    ErrorProbabilityConfig cfg;
    cfg.quad_nodes = 8;
    CHECK_THROWS_AS(error_probability(psi, cfg), Error);
    cfg = {};
    cfg.bound = 1.0;
    CHECK_THROWS_AS(error_probability(psi, cfg), Error);
    cfg = {};
    cfg.extent = 5.0;
    try {
        (void)zak_overlap(psi, 0.0, 0.0, cfg);
        FAIL("small extent accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::Configuration);
    }
    cfg = {};
    cfg.lattice_halfwidth = 40;
    CHECK_THROWS_AS(zak_overlap(psi, 0.0, 0.0, cfg), Error);

    cfg = {};
    cfg.quad_nodes = 16;
    cfg.convergence_tol = 1e-15;
    try {
        (void)error_probability(target_state({LogicalLabel::Zero, 0.1, 700}), cfg);
        FAIL("gate did not trip");
    } catch (const NotConvergedError &e) {
        CHECK(e.code() == ErrorCode::NotConverged);
        CHECK(e.coarse() != e.fine());
    }
}
