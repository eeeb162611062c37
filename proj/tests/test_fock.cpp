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
#include <random>

#include "gkpforge/error.hpp"
#include "gkpforge/fock.hpp"
#include "helpers.hpp"

using namespace gkpforge;
using gkpforge::testing::max_abs;
using gkpforge::testing::random_state;

namespace {

constexpr GateKind kAllGates[] = {GateKind::X, GateKind::Z, GateKind::S, GateKind::R, GateKind::K, GateKind::K_LB};

} // namespace

TEST_CASE("ladder operators") {
    const DenseOperator a2 = annihilation(2);
    const Eigen::VectorXcd lowered = a2 * FockVector::number_state(2, 1).amplitudes();
    CHECK(std::abs(lowered[0] - 1.0) < 1e-15);
    CHECK(std::abs(lowered[1]) < 1e-15);

    CHECK(std::abs(creation(3)(2, 1) - std::sqrt(2.0)) < 1e-12);

    for (int cutoff : {2, 5, 40}) {
        const DenseOperator q = position(cutoff);
        const Complex q2 = expectation(q * q, FockVector::vacuum(cutoff));
        CHECK(std::abs(q2 - 0.5) < 1e-14);
        CHECK(is_hermitian(q));
        CHECK(is_hermitian(momentum(cutoff)));
    }
    CHECK_THROWS_AS(annihilation(0), Error);
}

TEST_CASE("cached eigendecompositions reproduce the generators") {
    for (GateKind kind : kAllGates) {
        const auto cache = gate(kind, 30);
        const DenseOperator &g = cache->generator();
        CHECK(is_hermitian(g));
        const DenseOperator v = cache->eigenvectors();
        CHECK(is_unitary(v));
        const DenseOperator rebuilt = v * cache->eigenvalues().cast<Complex>().asDiagonal() * v.adjoint();
        CHECK(max_abs(rebuilt - g) < 1e-9 * max_abs(g));
    }
    CHECK(gate(GateKind::K, 12)->diagonal());
    CHECK(gate(GateKind::R, 12)->diagonal());
    CHECK_FALSE(gate(GateKind::S, 12)->diagonal());
    CHECK(gate(GateKind::X, 17) == gate(GateKind::X, 17));
    CHECK_THROWS_AS(parse_gate_kind("Y"), Error);
    CHECK(parse_gate_kind("K_LB") == GateKind::K_LB);
}

TEST_CASE("gates are unitary and obey the group law") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (GateKind kind : kAllGates) {
        const auto cache = gate(kind, 24);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const DenseOperator u = cache->unitary(angle(rng));
            worst = std::max(worst, max_abs(u.adjoint() * u - DenseOperator::Identity(24, 24)));
        }
        CHECK(worst < 1e-10);

        const FockVector psi = random_state(24, 5);
        const double t1 = angle(rng);
        const double t2 = angle(rng);
        const FockVector twice = cache->apply(t1, cache->apply(t2, psi));
        const FockVector once = cache->apply(t1 + t2, psi);
        CHECK((twice.amplitudes() - once.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(cache->apply(1.7, psi).norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("apply matches the dense unitary and is exact at zero angle") {
    const FockVector psi = random_state(20, 8);
    for (GateKind kind : kAllGates) {
        const auto cache = gate(kind, 20);
        const Eigen::VectorXcd dense = cache->unitary(0.37) * psi.amplitudes();
        CHECK((cache->apply(0.37, psi).amplitudes() - dense).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(cache->apply(0.0, psi).amplitudes() == psi.amplitudes());
    }
    Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(7);
    CHECK_THROWS_AS(gate(GateKind::X, 20)->apply_inplace(0.1, wrong), Error);
}

TEST_CASE("X displaces position, S squeezes it") {
    const FockVector displaced = gate(GateKind::X, 40)->apply(1.5, FockVector::vacuum(40));
    CHECK(std::abs(expectation(position(40), displaced) - 1.5) < 1e-6);

    // Squeezed vacuum against its closed-form Gaussian on a position grid.
    const double r = 0.4;
    const FockVector squeezed = gate(GateKind::S, 60)->apply(r, FockVector::vacuum(60));
    const DenseOperator q = position(60);
    CHECK(std::abs(expectation(q * q, squeezed).real() - std::exp(-2.0 * r) / 2.0) < 1e-5);

    const QuadratureGrid grid = QuadratureGrid::uniform(12.0, 0.005);
    const std::vector<Complex> psi = wavefunction(squeezed, grid);
    std::vector<double> second_moment(grid.size());
    double worst = 0.0;
    const double width = std::exp(r);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.points[i];
        const double analytic =
            std::pow(std::numbers::pi, -0.25) * std::sqrt(width) * std::exp(-width * width * x * x / 2.0);
        worst = std::max(worst, std::abs(psi[i] - analytic));
        second_moment[i] = x * x * std::norm(psi[i]);
    }
    CHECK(worst < 1e-6);
    CHECK(std::abs(grid.trapezoid(second_moment) - std::exp(-2.0 * r) / 2.0) < 1e-6);
}

TEST_CASE("diagonal gates") {
    const FockVector two = FockVector::number_state(10, 2);
    const FockVector out = gate(GateKind::K, 10)->apply(std::numbers::pi, two);
    CHECK((out.amplitudes() - two.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Kerr equals the Lloyd-Braunstein quartic gate after a rotation") {
    // (q^2 + p^2)^2 from truncated quadratures equals 4 n^2 + 4 n + 1 away from the edge.
    const int big = 30;
    const DenseOperator q = position(big);
    const DenseOperator p = momentum(big);
    const DenseOperator quad = q * q + p * p;
    const DenseOperator quartic = quad * quad;
    const int interior = 20;
    const DenseOperator expected = gate(GateKind::K_LB, big)->generator();
    CHECK(max_abs(quartic.topLeftCorner(interior, interior) - expected.topLeftCorner(interior, interior)) < 1e-10);

    const double k = 0.3;
    const int cutoff = 20;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const FockVector psi = random_state(cutoff, seed);
        const FockVector via_kerr = gate(GateKind::K, cutoff)->apply(k, psi);
        const FockVector via_lb =
            gate(GateKind::K_LB, cutoff)->apply(k / 4.0, gate(GateKind::R, cutoff)->apply(-k, psi));
        CHECK(std::abs(std::abs(inner(via_kerr, via_lb)) - 1.0) < 1e-10);
    }
}

TEST_CASE("Hermite functions") {
    const QuadratureGrid grid = QuadratureGrid::uniform(10.0, 0.02);
    const std::vector<Complex> vac = wavefunction(FockVector::vacuum(5), grid);
    const std::vector<Complex> vac_p = wavefunction(FockVector::vacuum(5), grid, Basis::Momentum);
    double worst = 0.0;
    double duality = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.points[i];
        worst = std::max(worst, std::abs(vac[i] - std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2.0)));
        duality = std::max(duality, std::abs(vac[i] - vac_p[i]));
    }
    CHECK(worst < 1e-12);
    CHECK(duality < 1e-12);
    CHECK(wavefunction_at(FockVector::number_state(3, 1), 0.0) == Complex{0.0, 0.0});

    std::vector<double> h(201);
    double peak = 0.0;
    for (double x = -25.0; x <= 25.0; x += 0.01) {
        hermite_functions(x, h);
        for (double value : h) {
            peak = std::max(peak, std::abs(value));
        }
    }
    CHECK(peak <= 0.9);

    // Overflow-prone regime for raw polynomials.
    CHECK(std::isfinite(hermite_function(300, 3.0)));
    CHECK(hermite_function(300, 40.0) == doctest::Approx(0.0));
}

TEST_CASE("Parseval on the default grid") {
    const QuadratureGrid grid = QuadratureGrid::uniform(22.0, 0.02);
    for (int cutoff : {10, 80, 150}) {
        const FockVector psi = random_state(cutoff, static_cast<std::uint64_t>(cutoff));
        CHECK(std::abs(grid.trapezoid(density(psi, grid)) - 1.0) < 1e-6);
        CHECK(std::abs(grid.trapezoid(density(psi, grid, Basis::Momentum)) - 1.0) < 1e-6);
    }
    const QuadratureGrid def = QuadratureGrid::for_cutoff(50);
    CHECK(def.spacing <= 0.02);
    CHECK(def.extent >= std::sqrt(100.0) + 5.0 - 1e-12);
    CHECK(def.points.front() == doctest::Approx(-def.points.back()));
}

TEST_CASE("two-mode composites") {
    const FockVector ket = tensor(FockVector::vacuum(2), FockVector::number_state(2, 1));
    CHECK(ket.cutoff() == 4);
    CHECK(ket[1] == Complex{1.0, 0.0});
    CHECK(std::abs(ket[0]) + std::abs(ket[2]) + std::abs(ket[3]) == 0.0);

    const DenseOperator id = DenseOperator::Identity(3, 3);
    const DenseOperator lhs = tensor_op(position(3), id) * tensor_op(id, momentum(3));
    CHECK(max_abs(lhs - tensor_op(position(3), momentum(3))) < 1e-12);

    const FockVector a(Eigen::VectorXcd::Random(6));
    const FockVector b(Eigen::VectorXcd::Random(9));
    CHECK(std::abs(tensor(a, b).norm() - a.norm() * b.norm()) < 1e-12);

    try {
        (void)tensor(FockVector::vacuum(100), FockVector::vacuum(100), 4096);
        FAIL("cap not enforced");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
        CHECK(std::string(e.what()).find("4096") != std::string::npos);
    }
}

TEST_CASE("FockVector helpers") {
    const FockVector psi = random_state(10, 3);
    CHECK(psi.is_normalized());
    const FockVector padded = psi.resized(14);
    CHECK(padded.cutoff() == 14);
    CHECK(std::abs(inner(psi, padded) - 1.0) < 1e-12);
    CHECK(psi.weight_below(10) == doctest::Approx(1.0));
    CHECK(psi.resized(4).norm() < 1.0);
}
