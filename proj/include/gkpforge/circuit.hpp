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
#include <span>
#include <vector>

#include "gkpforge/fock.hpp"
#include "gkpforge/gkp_states.hpp"

namespace gkpforge {

/// One block of the variational circuit, applied as X(c), Z(d), K(k), S(r) in
/// time order.
struct BlockParams {
    double c = 0.0; // position displacement
    double d = 0.0; // momentum displacement
    double k = 0.0; // Kerr strength
    double r = 0.0; // squeezing

    friend bool operator==(const BlockParams &, const BlockParams &) = default;
};

inline constexpr int kParamsPerBlock = 4;
inline constexpr std::array<GateKind, kParamsPerBlock> kBlockGates = {GateKind::X, GateKind::Z, GateKind::K,
                                                                      GateKind::S};
/// Optimizer box on the squeezing parameter.
inline constexpr double kMaxSqueezing = 3.0;

struct CircuitParams {
    std::vector<BlockParams> blocks;
    int cutoff = 0;
    double target_delta = 0.0;
    LogicalLabel target = LogicalLabel::Zero;
    std::uint64_t seed = 0;

    void validate() const;

    /// Parameters in block order, (c, d, k, r) per block.
    [[nodiscard]] std::vector<double> flatten() const;
    void assign(std::span<const double> flat);
};

/// Output of the circuit acting on the vacuum, at params.cutoff.
FockVector forward(const CircuitParams &params);
/// Same circuit at an arbitrary cutoff (used to re-run with a margin).
FockVector forward(std::span<const BlockParams> blocks, int cutoff);

struct FidelityGradient {
    double fidelity = 0.0;
    std::vector<double> gradient; // dF/dtheta, layout of CircuitParams::flatten
};

/// Reusable forward/adjoint evaluator. Not thread-safe; give each worker its
/// own instance.
///
/// With guard = 0 the gates act on the `window`-dimensional space exactly as
/// in `forward`. With guard > 0 they are built at window + guard and the
/// state is projected back onto |0>..|window-1> after every gate, so each
/// gate acts as the top-left block of a less truncated unitary and amplitude
/// reaching the window edge is lost rather than reflected.
class CircuitEvaluator {
  public:
    explicit CircuitEvaluator(int window, int guard = 0);

    [[nodiscard]] int window() const noexcept { return window_; }
    [[nodiscard]] int guard() const noexcept { return guard_; }

    /// F = |<target|psi(theta)>|^2 and, if `gradient` is non-empty, dF/dtheta.
    /// `target` has length window().
    double evaluate(std::span<const double> theta, const Eigen::VectorXcd &target, std::span<double> gradient);

    /// Output state of the last evaluate(), length window(); its norm is below
    /// 1 by the probability absorbed at the window edge.
    [[nodiscard]] Eigen::VectorXcd output() const;

  private:
    void project(Eigen::VectorXcd &v) const;

    int window_;
    int guard_;
    std::array<std::shared_ptr<const GateCache>, kParamsPerBlock> gates_;
    std::vector<Eigen::VectorXcd> states_; // states_[j]: right after gate j, before projection
    Eigen::VectorXcd chi_;
    Eigen::VectorXcd scratch_;
};

FidelityGradient fidelity_gradient(const CircuitParams &params, const FockVector &target);

} // namespace gkpforge
