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

#include "gkpforge/logical_ec.hpp"
#include "gkpforge/error.hpp"
#include "gkpforge/gkp_states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gkpforge {

namespace {

Symplectic multiply(const Symplectic &a, const Symplectic &b) {
    Symplectic out{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return out;
}

// R(phi)^dag (q, p) R(phi) = (q cos phi - p sin phi, q sin phi + p cos phi).
Symplectic rotation(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {{{c, -s}, {s, c}}};
}

// S(r)^dag (q, p) S(r) = (e^{-r} q, e^{r} p).
Symplectic squeeze(double r) { return {{{std::exp(-r), 0.0}, {0.0, std::exp(r)}}}; }

// <p|n> = (-i)^n h_n(p) for n < out.size().
void momentum_kets(double p, std::span<double> h, std::span<Complex> out) {
    hermite_functions(p, h);
    static constexpr Complex kPhase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = kPhase[n % 4] * h[n];
    }
}

} // namespace

PhaseGateDecomposition phase_gate_params(double s) {
    require(std::isfinite(s), ErrorCode::InvalidArgument, "phase-gate strength must be finite");
    const double r = std::asinh(s / 2.0);
    return {s, r, std::atan2(std::exp(r), 1.0)};
}

Symplectic phase_gate_symplectic(const PhaseGateDecomposition &g) {
    // Time order R(theta), S(r), R(theta - pi/2); Heisenberg matrices compose
    // with the last gate on the left.
    return multiply(multiply(rotation(g.theta - std::numbers::pi / 2.0), squeeze(g.r)), rotation(g.theta));
}

FockVector apply_logical(const FockVector &state, const LogicalGate &g) {
    const int n = state.cutoff();
    FockVector out = state;
    switch (g.kind) {
    case LogicalGateKind::Xbar:
        gate(GateKind::X, n)->apply_inplace(kSqrtPi, out.amplitudes());
        break;
    case LogicalGateKind::Zbar:
        gate(GateKind::Z, n)->apply_inplace(kSqrtPi, out.amplitudes());
        break;
    case LogicalGateKind::Fourier:
        gate(GateKind::R, n)->apply_inplace(g.angle, out.amplitudes());
        break;
    case LogicalGateKind::Sbar: {
        const PhaseGateDecomposition d = phase_gate_params(g.s);
        const auto rot = gate(GateKind::R, n);
        rot->apply_inplace(d.theta, out.amplitudes());
        gate(GateKind::S, n)->apply_inplace(d.r, out.amplitudes());
        rot->apply_inplace(d.theta - std::numbers::pi / 2.0, out.amplitudes());
        break;
    }
    }
    return out;
}

double fold_centered(double y) { return y - kSqrtPi * std::ceil(y / kSqrtPi - 0.5); }

double ec_correction(double p) { return fold_centered(-p); }

FockVector inverse_sum(const FockVector &data, const FockVector &ancilla, int tensor_cap) {
    const int nd = data.cutoff();
    const int na = ancilla.cutoff();
    const FockVector joint = tensor(data, ancilla, tensor_cap);

    // p_data = Vx diag(-mu) Vx^dag (X generator is -p), q_anc = Vz diag(lambda) Vz^dag.
    const auto xg = gate(GateKind::X, nd);
    const auto zg = gate(GateKind::Z, na);
    const DenseOperator vx = xg->eigenvectors();
    const DenseOperator vz = zg->eigenvectors();
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
        joint.amplitudes().data(), nd, na);

    Eigen::MatrixXcd rotated = vx.adjoint() * psi * vz.conjugate();
    for (int i = 0; i < nd; ++i) {
        for (int j = 0; j < na; ++j) {
            rotated(i, j) *= std::polar(1.0, -xg->eigenvalues()[i] * zg->eigenvalues()[j]);
        }
    }
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> result =
        vx * rotated * vz.transpose();
    return FockVector(Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(result.data(), result.size())));
}

EcOutcome ec_round(const FockVector &data, const FockVector &ancilla, std::uint64_t rng_seed, const EcConfig &cfg) {
    require(cfg.momentum_spacing > 0.0, ErrorCode::Configuration, "momentum spacing must be positive");
    require(data.is_normalized(1e-8) && ancilla.is_normalized(1e-8), ErrorCode::InvalidArgument,
            "ec_round inputs must be normalized");
    const int nd = data.cutoff();
    const int na = ancilla.cutoff();
    const FockVector joint = inverse_sum(data, ancilla, cfg.tensor_cap);
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
        joint.amplitudes().data(), nd, na);

    const double extent = cfg.extent > 0.0 ? cfg.extent : std::sqrt(2.0 * na) + 5.0;
    const QuadratureGrid grid = QuadratureGrid::uniform(extent, cfg.momentum_spacing);
    std::vector<double> h(static_cast<std::size_t>(na));
    Eigen::VectorXcd ket(na);
    std::vector<double> marginal(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        momentum_kets(grid.points[g], h, {ket.data(), static_cast<std::size_t>(na)});
        marginal[g] = (psi * ket).squaredNorm();
    }
    EcOutcome out;
    out.marginal_norm = grid.trapezoid(marginal);
    if (std::abs(out.marginal_norm - 1.0) > cfg.normalization_tol) {
        std::ostringstream msg;
        msg << "momentum marginal integrates to " << out.marginal_norm << " on a grid of spacing " << grid.spacing
            << " and extent " << extent;
        fail(ErrorCode::GridResolution, msg.str());
    }

    // Cell k spans [points[k], points[k+1]] with trapezoid mass.
    std::vector<double> cdf(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        cdf[k + 1] = cdf[k] + 0.5 * grid.spacing * (marginal[k] + marginal[k + 1]);
    }
    std::mt19937_64 rng(rng_seed);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cdf.back();
    const auto upper = std::upper_bound(cdf.begin() + 1, cdf.end(), u);
    const std::size_t cell = std::min<std::size_t>(static_cast<std::size_t>(upper - cdf.begin()) - 1,
                                                   grid.size() - 2);
    out.p_sample = 0.5 * (grid.points[cell] + grid.points[cell + 1]);

    momentum_kets(out.p_sample, h, {ket.data(), static_cast<std::size_t>(na)});
    Eigen::VectorXcd conditional = psi * ket;
    const double weight = conditional.norm();
    require(weight > 0.0, ErrorCode::GridResolution, "sampled momentum cell carries no probability");
    FockVector post(Eigen::VectorXcd(conditional / weight));

    out.correction = ec_correction(out.p_sample);
    gate(GateKind::Z, nd)->apply_inplace(out.correction, post.amplitudes());
    out.post_state = std::move(post);
    out.p_error_before = error_probability(data, cfg.error);
    out.p_error_after = error_probability(out.post_state, cfg.error);
    return out;
}

} // namespace gkpforge
