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

#include "gkpforge/fock.hpp"
#include "gkpforge/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace gkpforge {

namespace {

void check_cutoff(int cutoff) {
    require(cutoff >= 1, ErrorCode::InvalidDimension, "cutoff must be >= 1, got " + std::to_string(cutoff));
}

using RealPair = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

Eigen::Map<RealPair> as_real_pairs(Eigen::VectorXcd &v) {
    return {reinterpret_cast<double *>(v.data()), v.size(), 2};
}

} // namespace

FockVector::FockVector(int cutoff) {
    check_cutoff(cutoff);
    amplitudes_ = Eigen::VectorXcd::Zero(cutoff);
}

FockVector::FockVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    check_cutoff(static_cast<int>(amplitudes_.size()));
}

FockVector FockVector::vacuum(int cutoff) { return number_state(cutoff, 0); }

FockVector FockVector::number_state(int cutoff, int n) {
    FockVector v(cutoff);
    require(n >= 0 && n < cutoff, ErrorCode::InvalidDimension, "number state index outside the cutoff");
    v.amplitudes_[n] = 1.0;
    return v;
}

FockVector FockVector::normalized() const {
    const double nrm = norm();
    require(nrm > 0.0, ErrorCode::InvalidArgument, "cannot normalize the zero vector");
    return FockVector(Eigen::VectorXcd(amplitudes_ / nrm));
}

FockVector FockVector::resized(int cutoff) const {
    FockVector out(cutoff);
    const int keep = std::min(cutoff, this->cutoff());
    out.amplitudes_.head(keep) = amplitudes_.head(keep);
    return out;
}

double FockVector::weight_below(int window) const {
    const int keep = std::clamp(window, 0, cutoff());
    return amplitudes_.head(keep).squaredNorm();
}

Complex inner(const FockVector &a, const FockVector &b) {
    const int n = std::min(a.cutoff(), b.cutoff());
    return a.amplitudes().head(n).dot(b.amplitudes().head(n));
}

DenseOperator annihilation(int cutoff) {
    check_cutoff(cutoff);
    DenseOperator a = DenseOperator::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

DenseOperator creation(int cutoff) { return annihilation(cutoff).adjoint(); }

DenseOperator position(int cutoff) {
    const DenseOperator a = annihilation(cutoff);
    return (a + a.adjoint()) / std::numbers::sqrt2;
}

DenseOperator momentum(int cutoff) {
    const DenseOperator a = annihilation(cutoff);
    return (a - a.adjoint()) * Complex(0.0, -1.0 / std::numbers::sqrt2);
}

DenseOperator number_operator(int cutoff) {
    check_cutoff(cutoff);
    DenseOperator n = DenseOperator::Zero(cutoff, cutoff);
    for (int k = 0; k < cutoff; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return n;
}

bool is_hermitian(const DenseOperator &m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool is_unitary(const DenseOperator &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const DenseOperator id = DenseOperator::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff() < tol;
}

Complex expectation(const DenseOperator &op, const FockVector &state) {
    require(op.rows() == state.cutoff() && op.cols() == state.cutoff(), ErrorCode::InvalidDimension,
            "expectation: operator and state dimensions differ");
    return state.amplitudes().dot(op * state.amplitudes());
}

// ---------------------------------------------------------------------------

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::X:
        return "X";
    case GateKind::Z:
        return "Z";
    case GateKind::S:
        return "S";
    case GateKind::R:
        return "R";
    case GateKind::K:
        return "K";
    case GateKind::K_LB:
        return "K_LB";
    }
    fail(ErrorCode::UnsupportedGate, "unknown gate kind");
}

GateKind parse_gate_kind(std::string_view name) {
    for (GateKind k : {GateKind::X, GateKind::Z, GateKind::S, GateKind::R, GateKind::K, GateKind::K_LB}) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    fail(ErrorCode::UnsupportedGate, "unsupported gate '" + std::string(name) + "'");
}

GateCache::GateCache(GateKind kind, int cutoff) : kind_(kind), cutoff_(cutoff) {
    check_cutoff(cutoff);
    const int n = cutoff;
    Eigen::VectorXd diag;
    Complex step_phase{1.0, 0.0};
    switch (kind) {
    case GateKind::X:
        generator_ = -momentum(n);
        step_phase = {0.0, 1.0};
        break;
    case GateKind::Z:
        generator_ = position(n);
        break;
    case GateKind::S: {
        const DenseOperator q = position(n);
        const DenseOperator p = momentum(n);
        generator_ = 0.5 * (q * p + p * q);
        step_phase = std::polar(1.0, std::numbers::pi / 4.0);
        break;
    }
    case GateKind::R:
    case GateKind::K:
    case GateKind::K_LB:
        diagonal_ = true;
        diag.resize(n);
        for (int k = 0; k < n; ++k) {
            const double dk = k;
            diag[k] = kind == GateKind::R ? dk + 0.5 : kind == GateKind::K ? dk * dk : (2.0 * dk + 1.0) * (2.0 * dk + 1.0);
        }
        generator_ = diag.cast<Complex>().asDiagonal();
        break;
    default:
        fail(ErrorCode::UnsupportedGate, "unsupported gate kind");
    }

    for (int offset = -2; offset <= 2; ++offset) {
        Band band{offset, {}};
        bool any = false;
        for (int i = std::max(0, -offset); i < n && i + offset < n; ++i) {
            const Complex v = generator_(i, i + offset);
            band.values.push_back(v);
            any = any || v != Complex{};
        }
        if (any) {
            bands_.push_back(std::move(band));
        }
    }

    if (diagonal_) {
        eigenvalues_ = diag;
        phases_ = Eigen::VectorXcd::Ones(n);
        return;
    }

    phases_.resize(n);
    Complex ph{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        phases_[k] = ph;
        ph *= step_phase;
    }
    const DenseOperator similar = phases_.conjugate().asDiagonal() * generator_ * phases_.asDiagonal();
    // The phase similarity leaves a real symmetric matrix; anything else is a bug.
    if (similar.imag().cwiseAbs().maxCoeff() > 1e-12) {
        fail(ErrorCode::UnsupportedGate, "generator is not phase-similar to a real matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(similar.real());
    eigenvalues_ = solver.eigenvalues();
    basis_ = solver.eigenvectors();
}

DenseOperator GateCache::eigenvectors() const {
    if (diagonal_) {
        return DenseOperator::Identity(cutoff_, cutoff_);
    }
    return phases_.asDiagonal() * basis_.cast<Complex>();
}

DenseOperator GateCache::unitary(double theta) const {
    DenseOperator u(cutoff_, cutoff_);
    Eigen::VectorXcd column(cutoff_);
    for (int j = 0; j < cutoff_; ++j) {
        column.setZero();
        column[j] = 1.0;
        apply_inplace(theta, column);
        u.col(j) = column;
    }
    return u;
}

FockVector GateCache::apply(double theta, const FockVector &state) const {
    require(state.cutoff() == cutoff_, ErrorCode::InvalidDimension,
            "gate cutoff " + std::to_string(cutoff_) + " does not match state cutoff " +
                std::to_string(state.cutoff()));
    Eigen::VectorXcd psi = state.amplitudes();
    apply_inplace(theta, psi);
    return FockVector(std::move(psi));
}

void GateCache::apply_inplace(double theta, Eigen::VectorXcd &psi) const {
    if (psi.size() != cutoff_) {
        fail(ErrorCode::InvalidDimension, "gate applied to a vector of the wrong length");
    }
    if (theta == 0.0) {
        return;
    }
    if (diagonal_) {
        for (int k = 0; k < cutoff_; ++k) {
            psi[k] *= std::polar(1.0, theta * eigenvalues_[k]);
        }
        return;
    }
    Eigen::VectorXcd y = phases_.conjugate().cwiseProduct(psi);
    Eigen::VectorXcd z(cutoff_);
    as_real_pairs(z).noalias() = basis_.transpose() * as_real_pairs(y);
    for (int k = 0; k < cutoff_; ++k) {
        z[k] *= std::polar(1.0, theta * eigenvalues_[k]);
    }
    as_real_pairs(y).noalias() = basis_ * as_real_pairs(z);
    psi = phases_.cwiseProduct(y);
}

void GateCache::apply_generator(const Eigen::VectorXcd &psi, Eigen::VectorXcd &out) const {
    require(psi.size() == cutoff_, ErrorCode::InvalidDimension, "generator applied to a vector of the wrong length");
    out.setZero(cutoff_);
    for (const Band &band : bands_) {
        const int start = std::max(0, -band.offset);
        for (std::size_t k = 0; k < band.values.size(); ++k) {
            const int row = start + static_cast<int>(k);
            out[row] += band.values[k] * psi[row + band.offset];
        }
    }
}

std::shared_ptr<const GateCache> gate(GateKind kind, int cutoff) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const GateCache>> registry;
    const std::lock_guard lock(mutex);
    auto &slot = registry[{static_cast<int>(kind), cutoff}];
    if (!slot) {
        slot = std::make_shared<const GateCache>(kind, cutoff);
    }
    return slot;
}

// ---------------------------------------------------------------------------

FockVector tensor(const FockVector &a, const FockVector &b, int cap) {
    const long dim = static_cast<long>(a.cutoff()) * b.cutoff();
    require(dim <= cap, ErrorCode::ResourceLimit,
            "two-mode dimension " + std::to_string(dim) + " exceeds the tensor cap of " + std::to_string(cap));
    Eigen::VectorXcd out(dim);
    for (int i = 0; i < a.cutoff(); ++i) {
        out.segment(static_cast<long>(i) * b.cutoff(), b.cutoff()) = a[i] * b.amplitudes();
    }
    return FockVector(std::move(out));
}

DenseOperator tensor_op(const DenseOperator &a, const DenseOperator &b, int cap) {
    const long dim = a.rows() * b.rows();
    require(dim <= cap && a.cols() * b.cols() <= cap, ErrorCode::ResourceLimit,
            "two-mode dimension " + std::to_string(dim) + " exceeds the tensor cap of " + std::to_string(cap));
    DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace gkpforge
