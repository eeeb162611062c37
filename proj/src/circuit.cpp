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

#include "gkpforge/circuit.hpp"
#include "gkpforge/error.hpp"

#include <cmath>
#include <string>

namespace gkpforge {

void CircuitParams::validate() const {
    require(!blocks.empty(), ErrorCode::InvalidArgument, "circuit needs at least one block");
    require(cutoff >= 1, ErrorCode::InvalidDimension, "circuit cutoff must be >= 1");
    for (const BlockParams &b : blocks) {
        require(std::isfinite(b.c) && std::isfinite(b.d) && std::isfinite(b.k) && std::isfinite(b.r),
                ErrorCode::InvalidArgument, "circuit parameters must be finite");
    }
}

std::vector<double> CircuitParams::flatten() const {
    std::vector<double> flat;
    flat.reserve(blocks.size() * kParamsPerBlock);
    for (const BlockParams &b : blocks) {
        flat.insert(flat.end(), {b.c, b.d, b.k, b.r});
    }
    return flat;
}

void CircuitParams::assign(std::span<const double> flat) {
    require(flat.size() % kParamsPerBlock == 0, ErrorCode::InvalidDimension,
            "flat parameter vector length must be a multiple of 4");
    blocks.resize(flat.size() / kParamsPerBlock);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const double *p = &flat[i * kParamsPerBlock];
        blocks[i] = {p[0], p[1], p[2], p[3]};
    }
}

FockVector forward(std::span<const BlockParams> blocks, int cutoff) {
    require(cutoff >= 1, ErrorCode::InvalidDimension, "circuit cutoff must be >= 1");
    const auto x = gate(GateKind::X, cutoff);
    const auto z = gate(GateKind::Z, cutoff);
    const auto k = gate(GateKind::K, cutoff);
    const auto s = gate(GateKind::S, cutoff);
    FockVector state = FockVector::vacuum(cutoff);
    Eigen::VectorXcd &psi = state.amplitudes();
    for (const BlockParams &b : blocks) {
        x->apply_inplace(b.c, psi);
        z->apply_inplace(b.d, psi);
        k->apply_inplace(b.k, psi);
        s->apply_inplace(b.r, psi);
    }
    return state;
}

FockVector forward(const CircuitParams &params) {
    params.validate();
    return forward(params.blocks, params.cutoff);
}

CircuitEvaluator::CircuitEvaluator(int window, int guard) : window_(window), guard_(guard) {
    require(window >= 1, ErrorCode::InvalidDimension, "circuit cutoff must be >= 1");
    require(guard >= 0, ErrorCode::InvalidArgument, "guard band must be >= 0");
    for (std::size_t g = 0; g < kBlockGates.size(); ++g) {
        gates_[g] = gate(kBlockGates[g], window + guard);
    }
}

void CircuitEvaluator::project(Eigen::VectorXcd &v) const {
    if (guard_ > 0) {
        v.tail(guard_).setZero();
    }
}

double CircuitEvaluator::evaluate(std::span<const double> theta, const Eigen::VectorXcd &target,
                                  std::span<double> gradient) {
    require(!theta.empty() && theta.size() % kParamsPerBlock == 0, ErrorCode::InvalidDimension,
            "parameter vector length must be a positive multiple of 4");
    require(target.size() == window_, ErrorCode::InvalidDimension, "target cutoff does not match the circuit");
    const std::size_t count = theta.size();
    const int dim = window_ + guard_;
    states_.resize(count);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[0] = 1.0;
    for (std::size_t j = 0; j < count; ++j) {
        gates_[j % kParamsPerBlock]->apply_inplace(theta[j], psi);
        states_[j] = psi;
        project(psi);
    }
    const Complex amplitude = target.dot(psi.head(window_)); // conjugates target
    const double fid = std::norm(amplitude);
    if (gradient.empty()) {
        return fid;
    }
    require(gradient.size() == count, ErrorCode::InvalidDimension, "gradient buffer has the wrong length");

    // A = <t| P U_last ... P U_0 |0>. With chi the projected adjoint state
    // after gate j, dA/dtheta_j = <chi| i G_j |states_[j]>.
    chi_.setZero(dim);
    chi_.head(window_) = target;
    for (std::size_t jj = count; jj-- > 0;) {
        const GateCache &g = *gates_[jj % kParamsPerBlock];
        project(chi_);
        g.apply_generator(states_[jj], scratch_);
        const Complex d_amp = Complex{0.0, 1.0} * chi_.dot(scratch_);
        gradient[jj] = 2.0 * std::real(std::conj(amplitude) * d_amp);
        g.apply_adjoint_inplace(theta[jj], chi_);
    }
    return fid;
}

Eigen::VectorXcd CircuitEvaluator::output() const {
    require(!states_.empty(), ErrorCode::InvalidArgument, "evaluate() has not run");
    return states_.back().head(window_);
}

FidelityGradient fidelity_gradient(const CircuitParams &params, const FockVector &target) {
    params.validate();
    CircuitEvaluator evaluator(params.cutoff);
    const std::vector<double> theta = params.flatten();
    FidelityGradient out;
    out.gradient.assign(theta.size(), 0.0);
    out.fidelity = evaluator.evaluate(theta, target.amplitudes(), out.gradient);
    return out;
}

} // namespace gkpforge
