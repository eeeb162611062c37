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

#include <complex>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gkpforge {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

/// Pure state of one (or, via `tensor`, two) bosonic modes in the number basis
/// |0>, ..., |cutoff-1>.
class FockVector {
  public:
    explicit FockVector(int cutoff);
    explicit FockVector(Eigen::VectorXcd amplitudes);

    static FockVector vacuum(int cutoff);
    static FockVector number_state(int cutoff, int n);

    [[nodiscard]] int cutoff() const noexcept { return static_cast<int>(amplitudes_.size()); }
    [[nodiscard]] const Eigen::VectorXcd &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] Eigen::VectorXcd &amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] Complex operator[](int n) const { return amplitudes_[n]; }

    [[nodiscard]] double norm() const { return amplitudes_.norm(); }
    [[nodiscard]] bool is_normalized(double tol = 1e-10) const { return std::abs(norm() - 1.0) < tol; }
    [[nodiscard]] FockVector normalized() const;
    /// Zero-pads or truncates (without renormalizing) to `cutoff`.
    [[nodiscard]] FockVector resized(int cutoff) const;
    /// Probability held by |0>..|window-1>.
    [[nodiscard]] double weight_below(int window) const;

  private:
    Eigen::VectorXcd amplitudes_;
};

/// <a|b>; the shorter vector is zero-padded.
Complex inner(const FockVector &a, const FockVector &b);

DenseOperator annihilation(int cutoff);
DenseOperator creation(int cutoff);
DenseOperator position(int cutoff);
DenseOperator momentum(int cutoff);
DenseOperator number_operator(int cutoff);

bool is_hermitian(const DenseOperator &m, double tol = 1e-12);
bool is_unitary(const DenseOperator &m, double tol = 1e-10);

Complex expectation(const DenseOperator &op, const FockVector &state);

// ---------------------------------------------------------------------------
// Hermite functions and grids

/// Fills `out[n] = h_n(x)` for n < out.size(), where h_n is the orthonormal
/// Hermite function. Uses the scaled two-term recurrence with running
/// rescaling, so neither large n nor large |x| overflows or underflows early.
void hermite_functions(double x, std::span<double> out);
double hermite_function(int n, double x);

struct QuadratureGrid {
    std::vector<double> points;
    double spacing = 0.0;
    double extent = 0.0;

    /// Symmetric uniform grid on [-extent, extent] whose spacing does not
    /// exceed `max_spacing`; 0 is always a grid point.
    static QuadratureGrid uniform(double extent, double max_spacing);
    /// Extent sqrt(2 cutoff) + 5 and spacing <= 0.02.
    static QuadratureGrid for_cutoff(int cutoff);

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    /// Composite trapezoid rule of samples taken on this grid.
    [[nodiscard]] double trapezoid(std::span<const double> samples) const;
};

enum class Basis { Position, Momentum };

/// psi(x) = sum_n c_n h_n(x); the momentum basis carries (-i)^n per component.
std::vector<Complex> wavefunction(const FockVector &state, const QuadratureGrid &grid, Basis basis = Basis::Position);
Complex wavefunction_at(const FockVector &state, double x, Basis basis = Basis::Position);
/// |psi(x)|^2 on the grid.
std::vector<double> density(const FockVector &state, const QuadratureGrid &grid, Basis basis = Basis::Position);

// ---------------------------------------------------------------------------
// Gates

enum class GateKind { X, Z, S, R, K, K_LB };

std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// Hermitian generator G of a gate, U(theta) = exp(i theta G), together with
/// its eigendecomposition G = V diag(lambda) V^dagger.
///
/// Generators are built from the truncated ladder operators and exponentiated
/// afterwards, so every U(theta) is exactly unitary on the truncated space.
/// V is stored as D * O with D a diagonal phase and O real orthogonal (each
/// generator here is phase-similar to a real symmetric matrix), which keeps
/// every application at two real-by-complex matrix-vector products.
class GateCache {
  public:
    GateCache(GateKind kind, int cutoff);

    [[nodiscard]] GateKind kind() const noexcept { return kind_; }
    [[nodiscard]] int cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] bool diagonal() const noexcept { return diagonal_; }
    [[nodiscard]] const DenseOperator &generator() const noexcept { return generator_; }
    [[nodiscard]] const Eigen::VectorXd &eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] DenseOperator eigenvectors() const;
    [[nodiscard]] DenseOperator unitary(double theta) const;

    [[nodiscard]] FockVector apply(double theta, const FockVector &state) const;
    /// In-place U(theta) psi; `psi` must have length cutoff().
    void apply_inplace(double theta, Eigen::VectorXcd &psi) const;
    /// In-place U(theta)^dagger psi.
    void apply_adjoint_inplace(double theta, Eigen::VectorXcd &psi) const { apply_inplace(-theta, psi); }
    /// out = G psi, using the banded structure of the generator.
    void apply_generator(const Eigen::VectorXcd &psi, Eigen::VectorXcd &out) const;

  private:
    struct Band {
        int offset;                  // column - row
        std::vector<Complex> values; // values[i] = G(i, i + offset) for valid i
    };

    GateKind kind_;
    int cutoff_;
    bool diagonal_ = false;
    DenseOperator generator_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd basis_;       // O
    Eigen::VectorXcd phases_;     // diagonal of D
    std::vector<Band> bands_;
};

/// Shared, lazily built cache per (kind, cutoff); safe to call concurrently.
std::shared_ptr<const GateCache> gate(GateKind kind, int cutoff);

// ---------------------------------------------------------------------------
// Two-mode composites; mode 1 is the slow index.

inline constexpr int kDefaultTensorCap = 4096;

FockVector tensor(const FockVector &a, const FockVector &b, int cap = kDefaultTensorCap);
DenseOperator tensor_op(const DenseOperator &a, const DenseOperator &b, int cap = kDefaultTensorCap);

} // namespace gkpforge
