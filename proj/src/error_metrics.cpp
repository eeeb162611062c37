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

#include "gkpforge/error_metrics.hpp"
#include "gkpforge/error.hpp"
#include "gkpforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace gkpforge {

namespace {

const double kQuarticRootPi = std::sqrt(kSqrtPi);

struct Support {
    double extent;
    int halfwidth;
    double offset; // position of the reference lattice site s = 0
};

Support resolve_support(const FockVector &state, const ErrorProbabilityConfig &cfg) {
    cfg.validate();
    const double needed = std::sqrt(2.0 * state.cutoff()) + 4.0;
    const double extent = cfg.extent > 0.0 ? cfg.extent : needed + 1.0;
    const double offset = cfg.reference == LogicalLabel::One ? kSqrtPi : 0.0;
    if (extent < needed) {
        std::ostringstream msg;
        msg << "grid extent " << extent << " does not cover the support of a cutoff-" << state.cutoff()
            << " state (need >= " << needed << ")";
        fail(ErrorCode::Configuration, msg.str());
    }
    if (cfg.lattice_halfwidth > 0) {
        const double reach = (2.0 * cfg.lattice_halfwidth + 1.0) * kSqrtPi - offset;
        if (reach > extent + 1e-12) {
            std::ostringstream msg;
            msg << "grid extent " << extent << " too small for lattice half-width " << cfg.lattice_halfwidth
                << " (reaches " << reach << ")";
            fail(ErrorCode::Configuration, msg.str());
        }
        return {extent, cfg.lattice_halfwidth, offset};
    }
    // Every point 2 s sqrt(pi) + offset + u with |u| <= sqrt(pi) inside the extent is kept.
    return {extent, static_cast<int>(std::ceil((extent + kSqrtPi + offset) / (2.0 * kSqrtPi))), offset};
}

// Samples psi at 2 s sqrt(pi) + offset + u for s in [-S, S]; row-major by u.
struct LatticeSamples {
    int halfwidth;
    std::vector<Complex> values; // values[i * (2S+1) + (s + S)]
};

LatticeSamples sample_lattice(const FockVector &state, std::span<const double> us, const Support &support) {
    const int halfwidth = support.halfwidth;
    const int width = 2 * halfwidth + 1;
    LatticeSamples out{halfwidth, std::vector<Complex>(us.size() * static_cast<std::size_t>(width))};
    std::vector<double> h(static_cast<std::size_t>(state.cutoff()));
    const auto &c = state.amplitudes();
    for (std::size_t i = 0; i < us.size(); ++i) {
        for (int s = -halfwidth; s <= halfwidth; ++s) {
            hermite_functions(2.0 * s * kSqrtPi + support.offset + us[i], h);
            Complex acc{};
            for (int n = 0; n < state.cutoff(); ++n) {
                acc += c[n] * h[static_cast<std::size_t>(n)];
            }
            out.values[i * static_cast<std::size_t>(width) + static_cast<std::size_t>(s + halfwidth)] = acc;
        }
    }
    return out;
}

// u in (-sqrt(pi), sqrt(pi)] with u = folded + 2 k sqrt(pi).
std::pair<double, long> fold_position(double u) {
    const double period = 2.0 * kSqrtPi;
    const auto k = static_cast<long>(std::ceil((u - kSqrtPi) / period));
    return {u - static_cast<double>(k) * period, k};
}

double fold_momentum(double v) {
    const double k = std::ceil(v / kSqrtPi - 0.5);
    return v - k * kSqrtPi;
}

} // namespace

void ErrorProbabilityConfig::validate() const {
    require(bound > 0.0 && bound <= kSqrtPi / 2.0 + 1e-15, ErrorCode::Configuration,
            "integration bound must lie in (0, sqrt(pi)/2]");
    require(quad_nodes >= 16, ErrorCode::Configuration, "quad_nodes must be >= 16");
    require(convergence_tol > 0.0, ErrorCode::Configuration, "convergence tolerance must be positive");
    require(lattice_halfwidth >= 0 && extent >= 0.0, ErrorCode::Configuration, "negative lattice settings");
    require(reference != LogicalLabel::H, ErrorCode::Configuration, "shift reference must be |0> or |1>");
}

double fidelity(const FockVector &a, const FockVector &b) { return std::norm(inner(a, b)); }

Complex zak_overlap(const FockVector &state, double u, double v, const ErrorProbabilityConfig &cfg) {
    const Support support = resolve_support(state, cfg);
    const auto [u0, k] = fold_position(u);
    const double v0 = fold_momentum(v);
    const double us[] = {u0};
    const LatticeSamples samples = sample_lattice(state, us, support);
    Complex acc{};
    for (int s = -support.halfwidth; s <= support.halfwidth; ++s) {
        acc += std::polar(1.0, 2.0 * s * kSqrtPi * v0) *
               samples.values[static_cast<std::size_t>(s + support.halfwidth)];
    }
    return acc * std::polar(1.0, -2.0 * static_cast<double>(k) * kSqrtPi * v) / kQuarticRootPi;
}

double shift_probability(const FockVector &state, double u_lo, double u_hi, double v_lo, double v_hi, int nodes,
                         const ErrorProbabilityConfig &cfg) {
    const Support support = resolve_support(state, cfg);
    require(u_lo >= -kSqrtPi - 1e-12 && u_hi <= kSqrtPi + 1e-12 && v_lo >= -kSqrtPi / 2.0 - 1e-12 &&
                v_hi <= kSqrtPi / 2.0 + 1e-12,
            ErrorCode::Configuration, "shift window must lie inside the canonical cell");
    const MappedRule ru = gauss_legendre_on(u_lo, u_hi, nodes);
    const MappedRule rv = gauss_legendre_on(v_lo, v_hi, nodes);
    const LatticeSamples samples = sample_lattice(state, ru.x, support);
    const int width = 2 * support.halfwidth + 1;

    // phase[j * width + s] = exp(2 i s sqrt(pi) v_j)
    std::vector<Complex> phase(rv.x.size() * static_cast<std::size_t>(width));
    for (std::size_t j = 0; j < rv.x.size(); ++j) {
        for (int s = -support.halfwidth; s <= support.halfwidth; ++s) {
            phase[j * static_cast<std::size_t>(width) + static_cast<std::size_t>(s + support.halfwidth)] =
                std::polar(1.0, 2.0 * s * kSqrtPi * rv.x[j]);
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < ru.x.size(); ++i) {
        const Complex *row = &samples.values[i * static_cast<std::size_t>(width)];
        double inner_sum = 0.0;
        for (std::size_t j = 0; j < rv.x.size(); ++j) {
            const Complex *ph = &phase[j * static_cast<std::size_t>(width)];
            Complex acc{};
            for (int s = 0; s < width; ++s) {
                acc += ph[s] * row[s];
            }
            inner_sum += rv.w[j] * std::norm(acc);
        }
        total += ru.w[i] * inner_sum;
    }
    return total / kSqrtPi;
}

double error_probability(const FockVector &state, const ErrorProbabilityConfig &cfg) {
    cfg.validate();
    const double a = cfg.bound;
    const double coarse = 1.0 - shift_probability(state, -a, a, -a, a, cfg.quad_nodes, cfg);
    const double fine = 1.0 - shift_probability(state, -a, a, -a, a, 2 * cfg.quad_nodes, cfg);
    if (!(std::abs(fine - coarse) < cfg.convergence_tol)) {
        std::ostringstream msg;
        msg << "error probability not converged: " << coarse << " with " << cfg.quad_nodes << " nodes vs " << fine
            << " with " << 2 * cfg.quad_nodes;
        throw NotConvergedError(msg.str(), coarse, fine);
    }
    return std::clamp(fine, 0.0, 1.0);
}

double position_shift_marginal(const FockVector &state, const ErrorProbabilityConfig &cfg) {
    const Support support = resolve_support(state, cfg);
    const MappedRule ru = gauss_legendre_on(-cfg.bound, cfg.bound, 2 * cfg.quad_nodes);
    const LatticeSamples samples = sample_lattice(state, ru.x, support);
    const int width = 2 * support.halfwidth + 1;
    double total = 0.0;
    for (std::size_t i = 0; i < ru.x.size(); ++i) {
        double rho = 0.0;
        for (int s = 0; s < width; ++s) {
            rho += std::norm(samples.values[i * static_cast<std::size_t>(width) + static_cast<std::size_t>(s)]);
        }
        total += ru.w[i] * rho;
    }
    return total;
}

} // namespace gkpforge
