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

#include "gkpforge/error.hpp"
#include "gkpforge/fock.hpp"

#include <cmath>
#include <numbers>

namespace gkpforge {

namespace {

constexpr double kRescaleAbove = 1e150;

// (-i)^n
Complex momentum_phase(int n) {
    switch (n & 3) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, -1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, 1.0};
    }
}

} // namespace

void hermite_functions(double x, std::span<double> out) {
    const std::size_t count = out.size();
    if (count == 0) {
        return;
    }
    // Values are carried as scaled * exp(log_scale) so that h_0 underflowing
    // at large |x| does not zero the whole sequence.
    double log_scale = -0.5 * x * x;
    double factor = std::exp(log_scale);
    double prev = 0.0;
    double cur = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
    out[0] = cur * factor;
    for (std::size_t n = 1; n < count; ++n) {
        const double dn = static_cast<double>(n);
        const double next = x * std::sqrt(2.0 / dn) * cur - std::sqrt((dn - 1.0) / dn) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleAbove) {
            cur /= kRescaleAbove;
            prev /= kRescaleAbove;
            log_scale += std::log(kRescaleAbove);
            factor = std::exp(log_scale);
        }
        out[n] = cur * factor;
    }
}

double hermite_function(int n, double x) {
    require(n >= 0, ErrorCode::InvalidArgument, "hermite_function: negative index");
    std::vector<double> buf(static_cast<std::size_t>(n) + 1);
    hermite_functions(x, buf);
    return buf.back();
}

QuadratureGrid QuadratureGrid::uniform(double extent, double max_spacing) {
    require(extent > 0.0 && max_spacing > 0.0 && std::isfinite(extent), ErrorCode::Configuration,
            "quadrature grid needs positive extent and spacing");
    const auto half = static_cast<long>(std::ceil(extent / max_spacing));
    require(half < 50'000'000, ErrorCode::ResourceLimit, "quadrature grid too fine");
    QuadratureGrid grid;
    grid.extent = extent;
    grid.spacing = extent / static_cast<double>(half);
    grid.points.resize(static_cast<std::size_t>(2 * half + 1));
    for (long i = -half; i <= half; ++i) {
        grid.points[static_cast<std::size_t>(i + half)] = static_cast<double>(i) * grid.spacing;
    }
    return grid;
}

QuadratureGrid QuadratureGrid::for_cutoff(int cutoff) {
    require(cutoff >= 1, ErrorCode::InvalidDimension, "cutoff must be >= 1");
    return uniform(std::sqrt(2.0 * cutoff) + 5.0, 0.02);
}

double QuadratureGrid::trapezoid(std::span<const double> samples) const {
    require(samples.size() == points.size(), ErrorCode::InvalidDimension, "trapezoid: sample count mismatch");
    if (samples.size() < 2) {
        return 0.0;
    }
    double sum = 0.0;
    for (double s : samples) {
        sum += s;
    }
    sum -= 0.5 * (samples.front() + samples.back());
    return sum * spacing;
}

Complex wavefunction_at(const FockVector &state, double x, Basis basis) {
    const int n_max = state.cutoff();
    std::vector<double> h(static_cast<std::size_t>(n_max));
    hermite_functions(x, h);
    Complex acc{0.0, 0.0};
    const auto &c = state.amplitudes();
    for (int n = 0; n < n_max; ++n) {
        const Complex term = c[n] * h[static_cast<std::size_t>(n)];
        acc += basis == Basis::Momentum ? term * momentum_phase(n) : term;
    }
    return acc;
}

std::vector<Complex> wavefunction(const FockVector &state, const QuadratureGrid &grid, Basis basis) {
    const int n_max = state.cutoff();
    std::vector<double> h(static_cast<std::size_t>(n_max));
    // Fold the basis phase into the coefficients once.
    std::vector<Complex> coeff(static_cast<std::size_t>(n_max));
    for (int n = 0; n < n_max; ++n) {
        coeff[static_cast<std::size_t>(n)] =
            basis == Basis::Momentum ? state[n] * momentum_phase(n) : state[n];
    }
    std::vector<Complex> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        hermite_functions(grid.points[i], h);
        Complex acc{0.0, 0.0};
        for (int n = 0; n < n_max; ++n) {
            acc += coeff[static_cast<std::size_t>(n)] * h[static_cast<std::size_t>(n)];
        }
        out[i] = acc;
    }
    return out;
}

std::vector<double> density(const FockVector &state, const QuadratureGrid &grid, Basis basis) {
    const auto psi = wavefunction(state, grid, basis);
    std::vector<double> rho(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        rho[i] = std::norm(psi[i]);
    }
    return rho;
}

} // namespace gkpforge
